#pragma once

// Special covectors on a weight subspace of V^(x)n and their defining
// projection properties.
//
// All four kinds share one closed form. For a basis word J,
//   Omega_J = q^{l(J)} * (-1)^{#{marked inversions of J}}
// where l(J) is the number of strict inversions, the q-power is absent for
// the rational kinds, and an inversion (k,l), J_k > J_l, k < l counts as
// marked when both letters are fermionic (+ kinds) or when NOT both letters
// are fermionic (- kinds). Minimal sorted words get coefficient 1. The +
// kinds vanish unless every fermionic letter is distinct, the - kinds unless
// every bosonic letter is distinct; inadmissible weights have no such
// covector at all.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkzr/check_report.hpp"
#include "qkzr/covector.hpp"
#include "qkzr/rmatrix.hpp"

namespace qkzr {

enum class OmegaKind { SymPlus, SymMinus, QPlus, QMinus };

inline const char* omega_kind_name(OmegaKind k) {
  switch (k) {
    case OmegaKind::SymPlus: return "SymPlus";
    case OmegaKind::SymMinus: return "SymMinus";
    case OmegaKind::QPlus: return "QPlus";
    case OmegaKind::QMinus: return "QMinus";
  }
  return "?";
}

// +1 for the symmetric kinds (P-eigenvalue +1, repeated fermions excluded),
// -1 for the antisymmetric ones (P-eigenvalue -1, repeated bosons excluded).
inline int omega_sign(OmegaKind k) {
  return (k == OmegaKind::SymPlus || k == OmegaKind::QPlus) ? 1 : -1;
}

inline bool omega_is_q_kind(OmegaKind k) {
  return k == OmegaKind::QPlus || k == OmegaKind::QMinus;
}

// The natural R-matrix family for projecting each covector kind.
inline RFamily omega_family(OmegaKind k) {
  switch (k) {
    case OmegaKind::SymPlus: return RFamily::RationalPlus;
    case OmegaKind::SymMinus: return RFamily::RationalMinus;
    case OmegaKind::QPlus: return RFamily::TrigPlus;
    case OmegaKind::QMinus: return RFamily::TrigMinus;
  }
  throw std::logic_error("omega_family");
}

inline OmegaKind omega_kind_for_family(RFamily f) {
  switch (f) {
    case RFamily::RationalPlus: return OmegaKind::SymPlus;
    case RFamily::RationalMinus: return OmegaKind::SymMinus;
    case RFamily::TrigPlus: return OmegaKind::QPlus;
    case RFamily::TrigMinus: return OmegaKind::QMinus;
  }
  throw std::logic_error("omega_kind_for_family");
}

// Number of strict inversions: pairs k < l with J_k > J_l. Equal letters do
// not count, which makes this the minimal number of adjacent transpositions
// needed to sort the word.
inline int inversion_count(const MultiIndex& J) {
  int count = 0;
  for (size_t k = 0; k + 1 < J.size(); ++k)
    for (size_t l = k + 1; l < J.size(); ++l)
      if (J[k] > J[l]) ++count;
  return count;
}

// A weight admits the covector kind iff no excluded letter repeats:
// fermions for the + kinds, bosons for the - kinds.
inline bool omega_weight_admissible(OmegaKind kind, const Grading& g,
                                    const std::vector<int>& weights) {
  if (static_cast<int>(weights.size()) != g.K())
    throw std::invalid_argument("omega: weights must list K entries");
  for (int a = 1; a <= g.K(); ++a) {
    const bool excluded = omega_sign(kind) > 0 ? g.parity(a) == 1 : g.parity(a) == 0;
    if (excluded && weights[static_cast<size_t>(a) - 1] > 1) return false;
  }
  return true;
}

struct OmegaDoesNotExist : std::domain_error {
  explicit OmegaDoesNotExist(const std::string& what)
      : std::domain_error("covector does not exist: " + what) {}
};

// The covector on the weight subspace of the n-slot space over grading g.
// q is ignored by the rational kinds.
template <class S>
Covector<S> build_omega(OmegaKind kind, const Grading& g, const std::vector<int>& weights,
                        int n, const S& q = S(1)) {
  if (!omega_weight_admissible(kind, g, weights)) {
    std::string what = std::string(omega_kind_name(kind)) + " over " + g.str() +
                       " with a repeated " + (omega_sign(kind) > 0 ? "fermion" : "boson");
    throw OmegaDoesNotExist(what);
  }
  int total = 0;
  for (int m : weights) total += m;
  if (total != n)
    throw std::invalid_argument("omega: weights must sum to the number of slots");
  const TensorSpace space(g, n);
  Covector<S> out(space);
  const bool marked_both_fermionic = omega_sign(kind) > 0;
  for (const MultiIndex& J : weight_basis(space, weights)) {
    int marked = 0, inversions = 0;
    for (size_t k = 0; k + 1 < J.size(); ++k)
      for (size_t l = k + 1; l < J.size(); ++l) {
        if (J[k] <= J[l]) continue;
        ++inversions;
        const bool both = g.parity(J[k]) && g.parity(J[l]);
        if (both == marked_both_fermionic) ++marked;
      }
    S coeff = (marked % 2) ? S(-1) : S(1);
    if (omega_is_q_kind(kind)) coeff = coeff * pow_int(q, inversions);
    out.add(space.encode(J), coeff);
  }
  return out;
}

// Defining relations of a covector built by build_omega, checked against the
// matching R-matrix family. For the rational kinds: <O| P_ij = +-<O| for all
// i < j. For the q-kinds, at every adjacent pair (i, i-1) and every supplied
// sample argument: <O| Pq_{i,i-1} = +-<O|, <O| G_{i,i-1} = 0 and
// <O| R_{i,i-1}(x) = +-<O| P_{i,i-1}.
template <class S>
CheckReport validate_omega(const Covector<S>& omega, OmegaKind kind, const S& q,
                           const std::vector<S>& sample_args) {
  using Traits = ScalarTraits<S>;
  const TensorSpace& space = omega.space();
  const Grading& g = space.grading();
  const int n = space.slots();
  const int sign = omega_sign(kind);
  const std::string prefix = std::string("omega/") + omega_kind_name(kind) + "/";
  CheckReport report;

  auto update = [](typename Traits::Real& acc, const typename Traits::Real& v) {
    if (acc < v) acc = v;
  };
  if (!omega_is_q_kind(kind)) {
    typename Traits::Real perm_res{};
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const GradedOp<S> p = permutation_op<S>(i, j, space);
        const Covector<S> lhs = omega * p;
        const Covector<S> rhs = sign > 0 ? omega : omega * S(-1);
        update(perm_res, (lhs - rhs).max_abs());
      }
    rdetail::check_result<S>(report, prefix + "permutation-projection", perm_res,
                             std::string("<O|P_ij = ") + (sign > 0 ? "+" : "-") +
                                 "<O|, all pairs");
    return report;
  }

  const RFamily family = omega_family(kind);
  typename Traits::Real pq_res{}, gcorr_res{}, rproj_res{};
  for (int i = 1; i < n; ++i) {
    // embedding order (i, i-1): first tensor factor at the higher site
    const std::vector<int> slots = {i, i - 1};
    const GradedOp<S> pq = embed_units(q_permutation(g, q), slots, space);
    update(pq_res, ((omega * pq) - (sign > 0 ? omega : omega * S(-1))).max_abs());
    for (const S& u : sample_args) {
      const GradedOp<S> gc = embed_units(g_correction(sign, g, u, q), slots, space);
      update(gcorr_res, (omega * gc).max_abs());
      const GradedOp<S> r = embed_units(build_r(family, g, u, q), slots, space);
      const GradedOp<S> p = permutation_op<S>(i, i - 1, space);
      Covector<S> rhs = omega * p;
      if (sign < 0) rhs = rhs * S(-1);
      update(rproj_res, ((omega * r) - rhs).max_abs());
    }
  }
  const char pm = sign > 0 ? '+' : '-';
  rdetail::check_result<S>(report, prefix + "q-permutation-projection", pq_res,
                           std::string("<O|Pq = ") + pm + "<O|, adjacent pairs");
  rdetail::check_result<S>(report, prefix + "g-annihilation", gcorr_res,
                           std::string("<O|G") + pm + " = 0");
  rdetail::check_result<S>(report, prefix + "r-projection", rproj_res,
                           std::string("<O|R(x) = ") + pm + "<O|P at sampled x");
  return report;
}

}  // namespace qkzr
