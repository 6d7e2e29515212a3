#pragma once

// Scalar backends for the verifier.
//
// Every identity check runs over one of two coefficient fields:
//   - Rational        exact arbitrary-precision rationals (GMP mpq_class),
//   - Complex         double-precision complex numbers.
// All model data (positions, twists, couplings) is specified in exact
// rationals; the float backend converts once at configuration time. The
// backends never mix inside one computation: the whole core is templated
// on the scalar type.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qkzr {

using Rational = mpq_class;
using Complex = std::complex<double>;

// Parses "num", "num/den" or a decimal-free integer string into a canonical
// rational. Rejects zero denominators.
inline Rational parse_rational(const std::string& text) {
  mpq_class v;
  if (v.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  if (sgn(mpq_class(v.get_den())) == 0) {
    throw std::invalid_argument("zero denominator in rational: '" + text + "'");
  }
  v.canonicalize();
  return v;
}

// Serializes a rational as "num/den" with the denominator always explicit,
// so residuals print as "0/1" and reports stay canonical.
inline std::string rational_str(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  using Real = Rational;
  static constexpr bool exact = true;

  static Rational from_rational(const Rational& v) { return v; }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static Real abs_value(const Rational& v) { return Rational(abs(v)); }
  // Exact backend: a denominator is singular only when it is exactly zero.
  static bool singular_denominator(const Rational& d) { return sgn(d) == 0; }
  static bool residual_passes(const Real& r) { return sgn(r) == 0; }
  static double to_double(const Rational& v) { return v.get_d(); }
  static std::string str(const Rational& v) { return rational_str(v); }
};

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static constexpr bool exact = false;

  // Pinned tolerances for the float backend. A denominator smaller than
  // kPoleTolerance counts as a pole; a residual below kResidualTolerance
  // counts as zero.
  static constexpr double kPoleTolerance = 1e-8;
  static constexpr double kResidualTolerance = 1e-9;

  static Complex from_rational(const Rational& v) { return Complex(v.get_d(), 0.0); }
  static bool is_zero(const Complex& v) { return v == Complex(0.0, 0.0); }
  static Real abs_value(const Complex& v) { return std::abs(v); }
  static bool singular_denominator(const Complex& d) { return std::abs(d) < kPoleTolerance; }
  static bool residual_passes(const Real& r) { return r < kResidualTolerance; }
  static double to_double(const Complex& v) { return v.real(); }
  static std::string str(const Complex& v) {
    return "(" + std::to_string(v.real()) + "," + std::to_string(v.imag()) + ")";
  }
};

// Integer power with negative exponents allowed for invertible scalars.
template <class S>
S pow_int(const S& base, long e) {
  if (e < 0) {
    if (ScalarTraits<S>::is_zero(base)) {
      throw std::invalid_argument("pow_int: negative power of zero");
    }
    return S(1) / pow_int(base, -e);
  }
  S acc(1);
  S b = base;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

}  // namespace qkzr
