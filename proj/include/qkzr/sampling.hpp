#pragma once

// Deterministic random test points. Every draw is an exact rational with
// numerator and denominator bounded by 100, produced from a seeded
// mt19937_64, so the exact and the float backend see the identical
// configuration and reruns with the same seed reproduce the same points.
// Candidates sitting on a pole of the requested family are rejected in
// exact arithmetic and redrawn.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkzr/chain.hpp"
#include "qkzr/rmatrix.hpp"
#include "qkzr/scalar.hpp"

namespace qkzr {

// One full random chain configuration, exact. The same draw is valid for
// every family it was tested against, so a fallback to the partner family
// of the realm never hits a pole the primary family avoided.
struct ChainDraw {
  std::vector<Rational> positions;
  std::vector<Rational> twist;
  Rational coupling;
  Rational shift;
  Rational kappa;
};

class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  // Uniform in [lo, hi] by modulo reduction. The reduction bias is far below
  // anything a test point could notice, and unlike uniform_int_distribution
  // the stream does not depend on which standard library is linked.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    if (hi < lo) throw std::invalid_argument("sampler: empty range");
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1u;
    return lo + static_cast<int64_t>(rng_() % span);
  }

  // num/den with |num| <= 100 and 1 <= den <= 100, canonicalized.
  Rational rational(bool nonzero, bool positive) {
    for (;;) {
      const int64_t num = uniform_int(positive ? 1 : -100, 100);
      if (nonzero && num == 0) continue;
      const int64_t den = uniform_int(1, 100);
      Rational v(static_cast<long>(num), static_cast<unsigned long>(den));
      v.canonicalize();
      return v;
    }
  }

  // Spectral arguments usable by validate_r_axioms for the given family and
  // coupling: every argument, its negation (inverse for the trig realm) and
  // every ordered difference (ratio) stays away from the family poles, and
  // the rescaled variants remain finite.
  std::vector<Rational> spectral_samples(RFamily family, const Rational& coupling, int count) {
    using rdetail::difference_arg;
    using rdetail::family_denominator;
    const bool trig = is_trig_family(family);
    const Rational cflip =
        trig ? Rational(1 / coupling) : Rational(-coupling);

    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(count));
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
      if (++attempts > 1000 * count)
        throw std::logic_error("sampler: could not find nonsingular spectral arguments");
      const Rational x = rational(true, trig);
      if (trig && (x == 1 || x == -1)) continue;  // expm(x) = x - 1/x vanishes
      const Rational nx = trig ? Rational(1 / x) : Rational(-x);
      if (sgn(family_denominator(family, x, coupling)) == 0) continue;
      if (sgn(family_denominator(family, nx, coupling)) == 0) continue;
      if (sgn(family_denominator(family, x, cflip)) == 0) continue;
      bool ok = sgn(family_denominator(
                    family, difference_arg(family, x, x), coupling)) != 0;
      for (const Rational& y : out) {
        if (!ok) break;
        ok = sgn(family_denominator(family, difference_arg(family, x, y), coupling)) != 0 &&
             sgn(family_denominator(family, difference_arg(family, y, x), coupling)) != 0;
      }
      if (ok) out.push_back(x);
    }
    return out;
  }

  // Positions, twist, couplings and the Gaudin constant, drawn until the
  // configuration passes validate_chain_config for every listed family.
  // All families must live in one realm; positions are read additively for
  // the rational families and multiplicatively for the trig ones.
  ChainDraw chain_draw(int n, int K, const std::vector<RFamily>& families) {
    if (families.empty()) throw std::invalid_argument("sampler: no families given");
    const bool trig = is_trig_family(families.front());
    for (RFamily f : families)
      if (is_trig_family(f) != trig)
        throw std::invalid_argument("sampler: families must share a realm");

    for (int attempt = 0; attempt < 1000; ++attempt) {
      ChainDraw d;
      d.coupling = rational(true, false);
      if (trig && (d.coupling == 1 || d.coupling == -1)) continue;
      d.shift = rational(true, false);
      if (trig && (d.shift == 1 || d.shift == -1)) continue;
      d.kappa = rational(true, false);
      for (int i = 0; i < n; ++i) d.positions.push_back(rational(true, trig));
      for (int a = 0; a < K; ++a) d.twist.push_back(rational(true, false));

      ChainConfig<Rational> cfg;
      cfg.grading = make_grading(K, {});
      cfg.positions = d.positions;
      cfg.twist = d.twist;
      cfg.params = RParams<Rational>{d.coupling, d.shift};
      cfg.kappa = d.kappa;
      bool ok = true;
      for (RFamily f : families) {
        try {
          validate_chain_config(cfg, f);
        } catch (const SingularSpectralParameter&) {
          ok = false;
          break;
        }
      }
      if (ok) return d;
    }
    throw std::logic_error("sampler: could not find a nonsingular chain configuration");
  }

 private:
  std::mt19937_64 rng_;
};

// Conversion helpers used when handing exact draws to a templated suite.
template <class S>
std::vector<S> to_scalar(const std::vector<Rational>& v) {
  std::vector<S> out;
  out.reserve(v.size());
  for (const Rational& x : v) out.push_back(ScalarTraits<S>::from_rational(x));
  return out;
}

}  // namespace qkzr
