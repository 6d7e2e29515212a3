#pragma once

// Run configuration of the report tool. Values come from three layers:
// built-in defaults, then a key=value config file (--config), then command
// line flags, later layers overriding earlier ones. The QKZR_SEED
// environment variable supplies the default seed and nothing else.
// parse_config throws ConfigError with a distinct message per mistake; the
// caller maps that to exit code 2.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkzr/rmatrix.hpp"
#include "qkzr/scalar.hpp"

namespace qkzr::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for --help; carries the formatted help text.
struct HelpRequested {
  std::string text;
};

enum class Suite {
  RAxioms,
  Omega,
  Chain,
  Correspondence,
  DetIdentity,
  Degeneracy,
  SignFlip,
  All,
};

enum class Backend { Exact, Float };

const char* suite_name(Suite s);
const char* backend_name(Backend b);
std::string family_flag(RFamily f);  // the spelling the CLI accepts

struct RunConfig {
  Suite suite = Suite::All;
  int K = 2;
  bool grading_sweep = true;
  std::set<int> bosons;  // used when grading_sweep is false
  int n = 3;
  std::vector<int> weights;  // empty: sweep all compositions of n into K parts
  std::vector<Rational> twist;
  RFamily family = RFamily::RationalPlus;
  Rational eta{1};
  Rational hbar{3};
  Rational q{2};
  Rational w{3};
  Rational kappa{1};
  // Read additively by the rational families and multiplicatively by the
  // trig ones; the defaults avoid the poles of all four at the default
  // couplings.
  std::vector<Rational> positions;
  int samples = 3;
  uint64_t seed = 20260815;
  Backend backend = Backend::Exact;
  std::string output;      // empty: report goes to stdout
  std::string golden_dir;  // directory with covector coefficient tables
  bool timings = false;

  std::string grading_str() const;  // "sweep" or "bosons=..."
};

// First n positions valid for all four families at the given couplings.
// The first few are pinned small values; further entries are found by
// scanning integers, so the list is deterministic.
std::vector<Rational> default_positions(int n, const Rational& eta, const Rational& hbar,
                                        const Rational& q, const Rational& w);

RunConfig parse_config(const std::vector<std::string>& args);
RunConfig parse_config(int argc, const char* const* argv);

}  // namespace qkzr::cli
