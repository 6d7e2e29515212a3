#pragma once

// JSON debug serialization for operators and covectors, exact backend only.
// Operator format: list of [row-multiindex, col-multiindex, numerator,
// denominator]; covector format: list of [multiindex, numerator, denominator].
// Entries are emitted in row-major linear-index order, so serialization is
// deterministic and usable for golden tests.

#include <json.hpp>

#include "qkzr/covector.hpp"
#include "qkzr/graded_op.hpp"
#include "qkzr/scalar.hpp"

namespace qkzr {

inline nlohmann::json to_debug_json(const GradedOp<Rational>& op) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [r, cols] : op.rows()) {
    for (const auto& [c, v] : cols) {
      out.push_back({op.space().decode(r), op.space().decode(c), v.get_num().get_str(),
                     v.get_den().get_str()});
    }
  }
  return out;
}

inline nlohmann::json to_debug_json(const Covector<Rational>& cov) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [i, v] : cov.entries()) {
    out.push_back({cov.space().decode(i), v.get_num().get_str(), v.get_den().get_str()});
  }
  return out;
}

}  // namespace qkzr
