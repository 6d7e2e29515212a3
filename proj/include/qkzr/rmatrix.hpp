#pragma once

// The four R-matrix families on V (x) V and their companions: rescaled
// variants, the quantum permutation, the diagonal G corrections, the
// x -> +-infinity asymptotic matrices, the grading-flip map Q, and the
// axiom validation (unitarity, graded Yang-Baxter, twist symmetry, ...).
//
// Conventions. Rational families take an additive argument x and coupling
// eta; trig families are realized multiplicatively through u = e^x and
// q = e^eta, so every entry is a ratio of Laurent polynomials in u and q and
// both the exact and the floating backend evaluate identical expressions.
// The shifted argument x + eta*hbar becomes multiplication by w = e^{eta*hbar}.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkzr/check_report.hpp"
#include "qkzr/covector.hpp"
#include "qkzr/graded_op.hpp"

namespace qkzr {

enum class RFamily { RationalPlus, RationalMinus, TrigPlus, TrigMinus };

inline bool is_rational_family(RFamily f) {
  return f == RFamily::RationalPlus || f == RFamily::RationalMinus;
}

inline bool is_trig_family(RFamily f) { return !is_rational_family(f); }

// Sign of the coupling in the pole denominator: the plus families are
// singular at x = -eta (u q = +-1), the minus families at x = eta (u = +-q).
inline int family_sign(RFamily f) {
  return (f == RFamily::RationalPlus || f == RFamily::TrigPlus) ? 1 : -1;
}

inline const char* family_name(RFamily f) {
  switch (f) {
    case RFamily::RationalPlus: return "RationalPlus";
    case RFamily::RationalMinus: return "RationalMinus";
    case RFamily::TrigPlus: return "TrigPlus";
    case RFamily::TrigMinus: return "TrigMinus";
  }
  return "?";
}

inline RFamily parse_family(const std::string& s) {
  if (s == "RationalPlus" || s == "rational+") return RFamily::RationalPlus;
  if (s == "RationalMinus" || s == "rational-") return RFamily::RationalMinus;
  if (s == "TrigPlus" || s == "trig+") return RFamily::TrigPlus;
  if (s == "TrigMinus" || s == "trig-") return RFamily::TrigMinus;
  throw std::invalid_argument("unknown R-matrix family: " + s);
}

// Coupling constant and shift scalar in the realization the family uses:
// (eta, hbar) for rational families, (q = e^eta, w = e^{eta hbar}) for trig
// ones. hbar = 0 resp. w = 1 means no shift.
template <class S>
struct RParams {
  S coupling;
  S shift;
};

struct SingularSpectralParameter : std::domain_error {
  explicit SingularSpectralParameter(const std::string& what)
      : std::domain_error("singular spectral parameter: " + what) {}
};

namespace rdetail {

template <class S>
S inv(const S& v) {
  if (ScalarTraits<S>::is_zero(v)) throw SingularSpectralParameter("division by zero");
  return S(1) / v;
}

// t - 1/t for t = e^z, i.e. twice sinh z. Every trig entry is a ratio of two
// such factors (or of plain exponentials), so the halves cancel throughout.
template <class S>
S expm(const S& t) {
  return t - inv(t);
}

template <class S>
void require_regular(const S& den, const char* what) {
  if (ScalarTraits<S>::singular_denominator(den)) throw SingularSpectralParameter(what);
}

// q^{+-1} factor multiplying u in the family denominator.
template <class S>
S coupling_factor(RFamily family, const S& q) {
  return family_sign(family) > 0 ? q : inv(q);
}

}  // namespace rdetail

// R(arg) on V (x) V. For the rational families
//   R(x) = (x I + eta P) / (x + s eta),  s = family sign,
// and for the trig ones, with m_a = 1 - 2 p(a) and D = sinh(x + s eta),
//   e_aa (x) e_aa   sinh(x + m_a eta) / D
//   e_aa (x) e_bb   sinh(x) / D                               (a != b)
//   e_ab (x) e_ba   (-1)^{p(b)} (sinh(eta)/D) e^{c_{ab} x}    (a != b)
// where c_{ab} = +1 above / -1 below the diagonal for TrigPlus and the
// transposed pattern for TrigMinus. The transposition is what makes the
// minus family consistent with its -P + f (I + P^q) + G^- decomposition,
// its asymptotics and the q-antisymmetric projection.
template <class S>
LocalOp<S> build_r(RFamily family, const Grading& g, const S& arg, const S& coupling) {
  using rdetail::expm;
  using rdetail::inv;
  const int K = g.K();
  LocalOp<S> op;
  if (is_rational_family(family)) {
    const S den = family_sign(family) > 0 ? S(arg + coupling) : S(arg - coupling);
    rdetail::require_regular(den, "rational R-matrix at x = -+ eta");
    const S xs = arg / den;
    const S es = coupling / den;
    for (int a = 1; a <= K; ++a)
      op.push_back({g.parity(a) ? S(xs - es) : S(xs + es), {{a, a}, {a, a}}});
    for (int a = 1; a <= K; ++a)
      for (int b = 1; b <= K; ++b) {
        if (a == b) continue;
        op.push_back({xs, {{a, a}, {b, b}}});
        op.push_back({g.parity(b) ? S(-es) : es, {{a, b}, {b, a}}});
      }
    return op;
  }
  const S& u = arg;
  const S& q = coupling;
  const S den = expm(S(u * rdetail::coupling_factor(family, q)));
  rdetail::require_regular(den, "trig R-matrix at u = +- q^{-+1}");
  const S mixed = expm(u) / den;
  const S off = expm(q) / den;
  const S uinv = inv(u);
  for (int a = 1; a <= K; ++a)
    op.push_back({expm(S(u * (g.parity(a) ? inv(q) : q))) / den, {{a, a}, {a, a}}});
  for (int a = 1; a <= K; ++a)
    for (int b = 1; b <= K; ++b) {
      if (a == b) continue;
      op.push_back({mixed, {{a, a}, {b, b}}});
      const bool upper = a < b;
      const bool grows = (family_sign(family) > 0) == upper;
      S c = off * (grows ? u : uinv);
      if (g.parity(b)) c = -c;
      op.push_back({c, {{a, b}, {b, a}}});
    }
  return op;
}

// Rescaled matrix: I + (eta/x) P for the rational families and
// (sinh(x + s eta)/sinh x) R(x) for the trig ones. The trig version is built
// directly from its entries
//   e_aa (x) e_aa   sinh(x + m_a eta)/sinh(x)
//   e_aa (x) e_bb   1
//   e_ab (x) e_ba   (-1)^{p(b)} (sinh(eta)/sinh(x)) e^{c_{ab} x}
// (triangle exponents as in build_r), so its only singular point is x = 0.
template <class S>
LocalOp<S> build_r_rescaled(RFamily family, const Grading& g, const S& arg,
                            const S& coupling) {
  using rdetail::expm;
  using rdetail::inv;
  const int K = g.K();
  LocalOp<S> op;
  if (is_rational_family(family)) {
    rdetail::require_regular(arg, "rescaled rational R-matrix at x = 0");
    const S es = coupling / arg;
    for (int a = 1; a <= K; ++a)
      op.push_back({g.parity(a) ? S(S(1) - es) : S(S(1) + es), {{a, a}, {a, a}}});
    for (int a = 1; a <= K; ++a)
      for (int b = 1; b <= K; ++b) {
        if (a == b) continue;
        op.push_back({S(1), {{a, a}, {b, b}}});
        op.push_back({g.parity(b) ? S(-es) : es, {{a, b}, {b, a}}});
      }
    return op;
  }
  const S& u = arg;
  const S& q = coupling;
  const S den = expm(u);
  rdetail::require_regular(den, "rescaled trig R-matrix at u = +-1");
  const S off = expm(q) / den;
  const S uinv = inv(u);
  for (int a = 1; a <= K; ++a)
    op.push_back({expm(S(u * (g.parity(a) ? inv(q) : q))) / den, {{a, a}, {a, a}}});
  for (int a = 1; a <= K; ++a)
    for (int b = 1; b <= K; ++b) {
      if (a == b) continue;
      op.push_back({S(1), {{a, a}, {b, b}}});
      const bool upper = a < b;
      const bool grows = (family_sign(family) > 0) == upper;
      S c = off * (grows ? u : uinv);
      if (g.parity(b)) c = -c;
      op.push_back({c, {{a, b}, {b, a}}});
    }
  return op;
}

// Quantum permutation operator:
//   P^q = sum_a (-1)^{p(a)} e_aa (x) e_aa
//       + q sum_{a>b} (-1)^{p(b)} e_ab (x) e_ba
//       + q^{-1} sum_{a<b} (-1)^{p(b)} e_ab (x) e_ba.
template <class S>
LocalOp<S> q_permutation(const Grading& g, const S& q) {
  const S qinv = rdetail::inv(q);
  LocalOp<S> op;
  for (int a = 1; a <= g.K(); ++a)
    op.push_back({g.parity(a) ? S(-1) : S(1), {{a, a}, {a, a}}});
  for (int a = 1; a <= g.K(); ++a)
    for (int b = 1; b <= g.K(); ++b) {
      if (a == b) continue;
      S c = a > b ? q : qinv;
      if (g.parity(b)) c = -c;
      op.push_back({c, {{a, b}, {b, a}}});
    }
  return op;
}

// Diagonal corrections entering the trig decompositions. Nonzero only on
// e_aa (x) e_aa with a fermionic (sign +1) resp. bosonic (sign -1), where the
// entry is 2 (cosh eta - 1) sinh(x) / sinh(x + s eta).
template <class S>
LocalOp<S> g_correction(int sign, const Grading& g, const S& u, const S& q) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("g_correction: sign must be +1 or -1");
  using rdetail::expm;
  const S den = expm(S(u * (sign > 0 ? q : rdetail::inv(q))));
  rdetail::require_regular(den, "G correction at u = +- q^{-+1}");
  const S entry = S(q + rdetail::inv(q) - S(2)) * expm(u) / den;
  LocalOp<S> op;
  for (int a = 1; a <= g.K(); ++a)
    if (g.parity(a) == (sign > 0 ? 1 : 0)) op.push_back({entry, {{a, a}, {a, a}}});
  return op;
}

// Limits of the rescaled trig matrix as x -> +-infinity (direction = +-1):
// diagonal q^{direction * m_a} on e_aa (x) e_aa and 1 on e_aa (x) e_bb, plus
// direction * (q - q^{-1}) (-1)^{p(b)} e_ab (x) e_ba on a single triangle:
// the upper one (a < b) when direction matches the family sign, the lower
// one otherwise. Rational families have no finite limit and are rejected.
template <class S>
LocalOp<S> r_asymptotic(RFamily family, int direction, const Grading& g, const S& q) {
  if (is_rational_family(family))
    throw std::invalid_argument("r_asymptotic: rational families have no asymptotic matrix");
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("r_asymptotic: direction must be +1 or -1");
  const S qinv = rdetail::inv(q);
  S off = S(q - qinv);
  if (direction < 0) off = -off;
  const bool upper = (direction > 0) == (family_sign(family) > 0);
  LocalOp<S> op;
  for (int a = 1; a <= g.K(); ++a) {
    const bool fermion = g.parity(a) != 0;
    op.push_back({(direction > 0) != fermion ? q : qinv, {{a, a}, {a, a}}});
  }
  for (int a = 1; a <= g.K(); ++a)
    for (int b = 1; b <= g.K(); ++b) {
      if (a == b) continue;
      op.push_back({S(1), {{a, a}, {b, b}}});
      if ((a < b) == upper) {
        S c = off;
        if (g.parity(b)) c = -c;
        op.push_back({c, {{a, b}, {b, a}}});
      }
    }
  return op;
}

// The sign-flip symmetry of the solution map holds for the
// pair R_+(x) = R^{TrigPlus}(x) and R_-(x) = (sinh x / sinh(x - eta)) Rtilde(x)
// with Rtilde the TrigPlus rescaled matrix. That R_- is a scalar multiple of
// TrigPlus; it differs from the TrigMinus family matrix by transposing the
// off-diagonal triangles (it is its conjugate P R P). Only this variant makes
// the flip map an exact operator identity, so the sign-flip checks build
// their minus-side operators here.
template <class S>
LocalOp<S> build_r_symmetry(int sign, const Grading& g, const S& u, const S& q) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("build_r_symmetry: sign must be +1 or -1");
  if (sign > 0) return build_r(RFamily::TrigPlus, g, u, q);
  using rdetail::expm;
  const S den = expm(S(u * rdetail::inv(q)));
  rdetail::require_regular(den, "symmetry R-matrix at u = +- q");
  const S factor = expm(u) / den;
  LocalOp<S> op = build_r_rescaled(RFamily::TrigPlus, g, u, q);
  for (auto& term : op) term.coeff = term.coeff * factor;
  return op;
}

// Plain reinterpretation over the flipped grading: labels and numeric
// entries stay, only the space changes. This is NOT conjugation by Q (see
// below); it is the raw relabeling the grading-flip symmetry statements are
// formulated through.
template <class S>
GradedOp<S> grading_flip(const GradedOp<S>& op) {
  TensorSpace flipped(grading_flip(op.space().grading()), op.space().slots());
  GradedOp<S> out(flipped);
  for (const auto& [r, cols] : op.rows())
    for (const auto& [c, v] : cols) out.add_entry(r, c, v);
  return out;
}

template <class S>
Covector<S> grading_flip(const Covector<S>& w) {
  TensorSpace flipped(grading_flip(w.space().grading()), w.space().slots());
  Covector<S> out(flipped);
  for (const auto& [i, v] : w.entries()) out.add(i, v);
  return out;
}

// The grading-change operator Q maps each basis word to itself with all
// parities flipped. Reinterpreting a local matrix-unit monomial over the
// flipped grading changes the Koszul signs of its embedding, and the diagonal
// sign matrix
//   sigma(J) = (-1)^{sum_k k p(J_k)}   (slots counted from 0)
// compensates exactly: conjugating an embedded operator by sigma equals
// re-embedding its local terms over the flipped grading. This is the matrix
// of Q in our conventions, up to one scalar per weight block that conjugation
// cannot see.
template <class S>
GradedOp<S> q_intertwiner(const TensorSpace& space) {
  GradedOp<S> out(space);
  for (size_t idx = 0; idx < space.dim(); ++idx) {
    int e = 0;
    for (int s = 1; s < space.slots(); ++s)
      if (space.grading().parity(space.letter_at(idx, s))) e += s;
    out.add_entry(idx, idx, (e % 2) ? S(-1) : S(1));
  }
  return out;
}

// Q X Q^{-1} as an operator over the flipped grading.
template <class S>
GradedOp<S> q_conjugate(const GradedOp<S>& op) {
  const GradedOp<S> sigma = q_intertwiner<S>(op.space());
  return grading_flip(sigma * op * sigma);
}

// Right action <w| Q on a covector, over the flipped grading. Q is fixed only
// up to one scalar per weight block; we pin that scalar so that the minimal
// (sorted) word of every block keeps its coefficient, matching the
// normalization convention of the special covectors.
template <class S>
Covector<S> q_conjugate(const Covector<S>& w) {
  const TensorSpace& sp = w.space();
  TensorSpace flipped(grading_flip(sp.grading()), sp.slots());
  auto sign_exp = [&sp](size_t idx) {
    int e = 0;
    for (int s = 1; s < sp.slots(); ++s)
      if (sp.grading().parity(sp.letter_at(idx, s))) e += s;
    return e % 2;
  };
  Covector<S> out(flipped);
  for (const auto& [idx, v] : w.entries()) {
    MultiIndex sorted = sp.decode(idx);
    std::sort(sorted.begin(), sorted.end());
    const int rel = (sign_exp(idx) + sign_exp(sp.encode(sorted))) % 2;
    out.add(idx, rel ? S(-v) : v);
  }
  return out;
}

namespace rdetail {

// Denominator of build_r at the given argument, for pre-scanning samples.
template <class S>
S family_denominator(RFamily family, const S& arg, const S& coupling) {
  if (is_rational_family(family))
    return family_sign(family) > 0 ? S(arg + coupling) : S(arg - coupling);
  return expm(S(arg * coupling_factor(family, coupling)));
}

template <class S>
S negate_arg(RFamily family, const S& arg) {
  return is_rational_family(family) ? S(-arg) : inv(arg);
}

template <class S>
S difference_arg(RFamily family, const S& x, const S& y) {
  return is_rational_family(family) ? S(x - y) : S(x * inv(y));
}

// (x + s eta)/x resp. sinh(x + s eta)/sinh(x): the scalar relating R to its
// rescaled variant, and the weight multiplying K_i^{(0)} in the Hamiltonians.
template <class S>
S rescale_factor(RFamily family, const S& arg, const S& coupling) {
  const S num = family_denominator(family, arg, coupling);
  const S den = is_rational_family(family) ? arg : expm(arg);
  require_regular(den, "rescale factor at coincident arguments");
  return num / den;
}

template <class S>
void check_result(CheckReport& report, const std::string& name,
                  const typename ScalarTraits<S>::Real& residual, std::string detail) {
  report.add(name, ScalarTraits<S>::residual_passes(residual), residual_str(residual),
             std::move(detail));
}

}  // namespace rdetail

// Axioms of a single family at the supplied sample arguments: unitarity
// R_12(x) R_21(-x) = id with R_21 = P R_12 P, the graded Yang-Baxter equation
// R_12(x-y) R_13(x) R_23(y) = R_23(y) R_13(x) R_12(x-y) on V^(x)3 over all
// ordered sample pairs (differences become ratios u/v for trig families),
// commutation with diagonal twists g (x) g, weight preservation, and for the
// trig families also the decomposition through P^q and G, the scalar relation
// between R and its rescaled variant, and the Q-conjugation symmetries of the
// rescaled matrix and of P^q. Samples hitting any required pole are rejected
// up front.
template <class S>
CheckReport validate_r_axioms(RFamily family, const Grading& grading,
                              const std::vector<S>& samples, const RParams<S>& params,
                              const std::vector<S>& twist) {
  using Traits = ScalarTraits<S>;
  using rdetail::difference_arg;
  using rdetail::family_denominator;
  using rdetail::negate_arg;
  if (samples.empty()) throw std::invalid_argument("validate_r_axioms: no samples");
  if (static_cast<int>(twist.size()) != grading.K())
    throw std::invalid_argument("validate_r_axioms: twist size must equal K");
  const S& c = params.coupling;

  for (const S& x : samples) {
    rdetail::require_regular(family_denominator(family, x, c), "sample argument");
    rdetail::require_regular(family_denominator(family, negate_arg(family, x), c),
                             "negated sample argument");
    if (is_rational_family(family))
      rdetail::require_regular(x, "sample argument (rescaled)");
    else
      rdetail::require_regular(rdetail::expm(x), "sample argument (rescaled)");
  }
  for (const S& x : samples)
    for (const S& y : samples)
      rdetail::require_regular(family_denominator(family, difference_arg(family, x, y), c),
                               "sample difference");

  const std::string prefix = std::string("rmatrix/") + family_name(family) + "/";
  CheckReport report;
  const TensorSpace two(grading, 2);
  const TensorSpace three(grading, 3);
  const GradedOp<S> id2 = GradedOp<S>::identity(two);
  typename Traits::Real unit_res{}, ybe_res{}, twist_res{};
  bool weights_pass = true;

  GradedOp<S> twist2 = embed_twist(twist, 0, two) * embed_twist(twist, 1, two);

  auto update = [](typename Traits::Real& acc, const typename Traits::Real& v) {
    if (acc < v) acc = v;
  };

  for (const S& x : samples) {
    const LocalOp<S> r = build_r(family, grading, x, c);
    const LocalOp<S> rneg = build_r(family, grading, negate_arg(family, x), c);
    const GradedOp<S> r12 = embed_units(r, {0, 1}, two);
    const GradedOp<S> r21neg = embed_units(rneg, {1, 0}, two);
    update(unit_res, (r12 * r21neg - id2).max_abs());
    update(twist_res, (twist2 * r12 - r12 * twist2).max_abs());
    if (!r12.preserves_weights()) weights_pass = false;
  }
  for (const S& x : samples)
    for (const S& y : samples) {
      const S d = difference_arg(family, x, y);
      const GradedOp<S> rd = embed_units(build_r(family, grading, d, c), {0, 1}, three);
      const GradedOp<S> rx = embed_units(build_r(family, grading, x, c), {0, 2}, three);
      const GradedOp<S> ry = embed_units(build_r(family, grading, y, c), {1, 2}, three);
      update(ybe_res, (rd * rx * ry - ry * rx * rd).max_abs());
    }

  const std::string spl = " samples=" + std::to_string(samples.size());
  rdetail::check_result<S>(report, prefix + "unitarity", unit_res, "R12(x) R21(-x) = id;" + spl);
  rdetail::check_result<S>(report, prefix + "yang-baxter", ybe_res,
                           "R12 R13 R23 = R23 R13 R12;" + spl);
  rdetail::check_result<S>(report, prefix + "twist-symmetry", twist_res,
                           "[g(x)g, R] = 0;" + spl);
  report.add(prefix + "weight-preservation", weights_pass, weights_pass ? "0" : "",
             "R maps each weight subspace to itself");

  typename Traits::Real resc_res{}, flip_res{};
  for (const S& x : samples) {
    const GradedOp<S> rt = embed_units(build_r_rescaled(family, grading, x, c), {0, 1}, two);
    const GradedOp<S> r12 = embed_units(build_r(family, grading, x, c), {0, 1}, two);
    const S factor = rdetail::rescale_factor(family, x, c);
    update(resc_res, (rt - r12 * factor).max_abs());

    const S cflip = is_rational_family(family) ? S(-c) : rdetail::inv(c);
    const GradedOp<S> lhs = q_conjugate(rt);
    const TensorSpace two_flipped(grading_flip(grading), 2);
    const GradedOp<S> rhs = embed_units(
        build_r_rescaled(family, grading_flip(grading), x, cflip), {0, 1}, two_flipped);
    update(flip_res, (lhs - rhs).max_abs());
  }
  rdetail::check_result<S>(report, prefix + "rescaled-consistency", resc_res,
                           "rescaled R equals scalar times R;" + spl);
  rdetail::check_result<S>(report, prefix + "grading-flip-symmetry", flip_res,
                           "Q Rt(eta) Q^-1 = Rt(-eta) over flipped grading;" + spl);

  if (is_trig_family(family)) {
    typename Traits::Real dec_res{};
    const int sgn = family_sign(family);
    const GradedOp<S> p12 = permutation_op<S>(0, 1, two);
    const GradedOp<S> pq = embed_units(q_permutation(grading, c), {0, 1}, two);
    for (const S& u : samples) {
      const GradedOp<S> r12 = embed_units(build_r(family, grading, u, c), {0, 1}, two);
      const GradedOp<S> gcorr = embed_units(g_correction(sgn, grading, u, c), {0, 1}, two);
      const S f = rdetail::expm(u) / family_denominator(family, u, c);
      GradedOp<S> rebuilt = sgn > 0 ? p12 : p12 * S(-1);
      rebuilt += (id2 - pq * S(sgn)) * f;
      rebuilt += gcorr;
      update(dec_res, (r12 - rebuilt).max_abs());
    }
    rdetail::check_result<S>(
        report, prefix + "decomposition", dec_res,
        (sgn > 0 ? std::string("R = P + f (id - Pq) + G+;") : "R = -P + f (id + Pq) + G-;") + spl);

    const GradedOp<S> pq_flip = embed_units(
        q_permutation(grading_flip(grading), c), {0, 1}, TensorSpace(grading_flip(grading), 2));
    rdetail::check_result<S>(report, prefix + "q-permutation-flip",
                             (q_conjugate(pq) + pq_flip).max_abs(),
                             "Q Pq Q^-1 = -Pq over flipped grading");
  }
  return report;
}

}  // namespace qkzr
