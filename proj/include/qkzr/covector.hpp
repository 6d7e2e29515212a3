#pragma once

// Sparse covectors (row vectors) on V^(x)n. The invariant vectors the
// correspondence checks project with live here; all identities of the form
// <O| A = c <O| are verified by computing the left action exactly and taking
// the max-norm of the difference.

#include <map>
#include <stdexcept>

#include "qkzr/graded_op.hpp"
#include "qkzr/scalar.hpp"
#include "qkzr/space.hpp"

namespace qkzr {

template <class S>
class Covector {
 public:
  using Traits = ScalarTraits<S>;

  Covector() = default;
  explicit Covector(TensorSpace space) : space_(std::move(space)) {}

  const TensorSpace& space() const { return space_; }
  const std::map<size_t, S>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  void add(size_t idx, const S& v) {
    if (Traits::is_zero(v)) return;
    auto& cell = entries_[idx];
    cell = cell + v;
    if (Traits::is_zero(cell)) entries_.erase(idx);
  }

  S coefficient(size_t idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? S(0) : it->second;
  }
  S coefficient(const MultiIndex& J) const { return coefficient(space_.encode(J)); }

  Covector operator*(const S& s) const {
    Covector out(space_);
    if (Traits::is_zero(s)) return out;
    for (const auto& [i, v] : entries_) out.add(i, v * s);
    return out;
  }

  Covector operator+(const Covector& o) const {
    check_same_space(o);
    Covector out = *this;
    for (const auto& [i, v] : o.entries_) out.add(i, v);
    return out;
  }

  Covector operator-(const Covector& o) const {
    check_same_space(o);
    Covector out = *this;
    for (const auto& [i, v] : o.entries_) out.add(i, S(0) - v);
    return out;
  }

  // Left action: (<O| A)_c = sum_r O_r A_rc.
  Covector operator*(const GradedOp<S>& op) const {
    if (space_ != op.space()) throw std::invalid_argument("covector: space mismatch");
    Covector out(space_);
    for (const auto& [r, v] : entries_) {
      auto row = op.rows().find(r);
      if (row == op.rows().end()) continue;
      for (const auto& [c, w] : row->second) out.add(c, v * w);
    }
    return out;
  }

  typename Traits::Real max_abs() const {
    typename Traits::Real m(0);
    for (const auto& [i, v] : entries_) {
      typename Traits::Real a = Traits::abs_value(v);
      if (m < a) m = a;
    }
    return m;
  }

  bool operator==(const Covector& o) const {
    return space_ == o.space_ && entries_ == o.entries_;
  }

  // True when the support lies in the weight subspace of the given counts.
  bool supported_on_weights(const std::vector<int>& M) const {
    for (const auto& [i, v] : entries_) {
      if (space_.weights(i) != M) return false;
    }
    return true;
  }

 private:
  void check_same_space(const Covector& o) const {
    if (space_ != o.space_) throw std::invalid_argument("covector: space mismatch");
  }

  TensorSpace space_;
  std::map<size_t, S> entries_;
};

}  // namespace qkzr
