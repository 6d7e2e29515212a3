#pragma once

// Composite operators of the n-site inhomogeneous chain: the qKZ-type K
// operators (products of R factors winding around one site), the Gaudin and
// nearest-neighbour-free chain Hamiltonians, the twisted transfer matrix and
// its asymptotics, plus the identity battery tying all of them together.
//
// Site i in 1..n lives at tensor slot i-1. Transfer-matrix computations
// prepend an auxiliary factor at slot 0 of an (n+1)-slot space and remove it
// again with the partial supertrace.

#include <stdexcept>
#include <string>
#include <vector>

#include "qkzr/check_report.hpp"
#include "qkzr/covector.hpp"
#include "qkzr/graded_op.hpp"
#include "qkzr/omega.hpp"
#include "qkzr/rmatrix.hpp"
#include "qkzr/space.hpp"

namespace qkzr {

// Chain data: inhomogeneity positions (additive x_i for the rational
// families, multiplicative u_i = e^{x_i} for the trigonometric ones), the
// diagonal twist g, the R-matrix parameters, and the Gaudin coupling kappa
// (rational setting only).
template <class S>
struct ChainConfig {
  Grading grading;
  std::vector<S> positions;
  std::vector<S> twist;
  RParams<S> params;
  S kappa = S(1);

  int n() const { return static_cast<int>(positions.size()); }
  TensorSpace site_space() const { return TensorSpace(grading, n()); }
};

// Shift value that leaves spectral parameters alone: x + eta*0 additively,
// u*1 multiplicatively. K_i^{(0)} is k_operator at this shift.
template <class S>
S neutral_shift(RFamily family) {
  return is_rational_family(family) ? S(0) : S(1);
}

namespace chaindetail {

// Argument of the leading K factors: x_i - x_j + eta*hbar, realized
// multiplicatively as u_i w / u_j (w = e^{eta hbar}).
template <class S>
S shifted_arg(RFamily family, const S& xi, const S& xj, const S& coupling, const S& shift) {
  if (is_rational_family(family)) return S(xi - xj + coupling * shift);
  return S(xi * shift * rdetail::inv(xj));
}

}  // namespace chaindetail

// Rejects configs that put any constructor on a pole: coincident positions,
// position differences on an R-matrix pole (x_i - x_j = -+eta), or the same
// after the hbar shift.
template <class S>
void validate_chain_config(const ChainConfig<S>& cfg, RFamily family) {
  const int n = cfg.n();
  if (n < 1) throw std::invalid_argument("chain: need at least one site");
  if (static_cast<int>(cfg.twist.size()) != cfg.grading.K())
    throw std::invalid_argument("chain: twist must list K diagonal entries");
  const S& c = cfg.params.coupling;
  if (is_trig_family(family)) {
    rdetail::require_regular(c, "zero trigonometric coupling q");
    rdetail::require_regular(cfg.params.shift, "zero multiplicative shift w");
    for (const S& u : cfg.positions) rdetail::require_regular(u, "zero multiplicative position");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const S d = rdetail::difference_arg(family, cfg.positions[static_cast<size_t>(i)],
                                          cfg.positions[static_cast<size_t>(j)]);
      if (is_rational_family(family))
        rdetail::require_regular(d, "coincident positions");
      else
        rdetail::require_regular(rdetail::expm(d), "coincident positions (u_i = +-u_j)");
      rdetail::require_regular(rdetail::family_denominator(family, d, c),
                               "position difference on an R-matrix pole");
      const S ds = chaindetail::shifted_arg(family, cfg.positions[static_cast<size_t>(i)],
                                            cfg.positions[static_cast<size_t>(j)], c,
                                            cfg.params.shift);
      rdetail::require_regular(rdetail::family_denominator(family, ds, c),
                               "shifted position difference on an R-matrix pole");
    }
  }
}

// K operator with a caller-supplied factor builder (argument -> two-site
// operator). The sign-flip correspondence check conjugates K operators whose
// factors are not any of the four stock families, hence the hook; everything
// else should go through k_operator below.
//
// The factor order is fixed: R_{i,i-1}(x_i-x_{i-1}+eta hbar) ... R_{i1}(...)
// g^(i) R_{in}(x_i-x_n) ... R_{i,i+1}(x_i-x_{i+1}), multiplied left to right.
template <class S, class RBuilder>
GradedOp<S> k_operator_custom(int i, const S& shift, const ChainConfig<S>& cfg, RFamily family,
                              RBuilder&& factor_at) {
  validate_chain_config(cfg, family);
  const int n = cfg.n();
  if (i < 1 || i > n) throw std::invalid_argument("k_operator: site index out of range");
  const TensorSpace space = cfg.site_space();
  const S& c = cfg.params.coupling;
  GradedOp<S> acc = GradedOp<S>::identity(space);
  for (int j = i - 1; j >= 1; --j) {
    const S arg = chaindetail::shifted_arg(family, cfg.positions[static_cast<size_t>(i) - 1],
                                           cfg.positions[static_cast<size_t>(j) - 1], c, shift);
    acc = acc * embed_units(factor_at(arg), {i - 1, j - 1}, space);
  }
  acc = acc * embed_twist(cfg.twist, i - 1, space);
  for (int j = n; j >= i + 1; --j) {
    const S arg = rdetail::difference_arg(family, cfg.positions[static_cast<size_t>(i) - 1],
                                          cfg.positions[static_cast<size_t>(j) - 1]);
    acc = acc * embed_units(factor_at(arg), {i - 1, j - 1}, space);
  }
  return acc;
}

template <class S>
GradedOp<S> k_operator(int i, const S& shift, const ChainConfig<S>& cfg, RFamily family) {
  return k_operator_custom(i, shift, cfg, family, [&](const S& arg) {
    return build_r(family, cfg.grading, arg, cfg.params.coupling);
  });
}

// Gaudin Hamiltonian g^(i) + kappa sum_{j != i} P_ij/(x_i - x_j). Lives in
// the rational setting; positions are read additively regardless of family.
template <class S>
GradedOp<S> gaudin_hamiltonian(int i, const ChainConfig<S>& cfg) {
  const int n = cfg.n();
  if (n < 1) throw std::invalid_argument("chain: need at least one site");
  if (i < 1 || i > n) throw std::invalid_argument("gaudin: site index out of range");
  if (static_cast<int>(cfg.twist.size()) != cfg.grading.K())
    throw std::invalid_argument("chain: twist must list K diagonal entries");
  const TensorSpace space = cfg.site_space();
  GradedOp<S> h = embed_twist(cfg.twist, i - 1, space);
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    const S d = S(cfg.positions[static_cast<size_t>(i) - 1] -
                  cfg.positions[static_cast<size_t>(j) - 1]);
    rdetail::require_regular(d, "coincident positions");
    h += permutation_op<S>(i - 1, j - 1, space) * S(cfg.kappa * rdetail::inv(d));
  }
  return h;
}

// Chain Hamiltonian in its product form: the K-operator factor order with
// every R replaced by its rescaled variant and no hbar shift. Equals
// K_i^{(0)} times the scalar prod_{j != i} f(x_i - x_j) with f the rescale
// factor; validate_chain_identities compares the two forms.
template <class S>
GradedOp<S> chain_hamiltonian(int i, const ChainConfig<S>& cfg, RFamily family) {
  validate_chain_config(cfg, family);
  const int n = cfg.n();
  if (i < 1 || i > n) throw std::invalid_argument("hamiltonian: site index out of range");
  const TensorSpace space = cfg.site_space();
  const S& c = cfg.params.coupling;
  GradedOp<S> acc = GradedOp<S>::identity(space);
  const auto factor = [&](int j) {
    const S arg = rdetail::difference_arg(family, cfg.positions[static_cast<size_t>(i) - 1],
                                          cfg.positions[static_cast<size_t>(j) - 1]);
    return embed_units(build_r_rescaled(family, cfg.grading, arg, c), {i - 1, j - 1}, space);
  };
  for (int j = i - 1; j >= 1; --j) acc = acc * factor(j);
  acc = acc * embed_twist(cfg.twist, i - 1, space);
  for (int j = n; j >= i + 1; --j) acc = acc * factor(j);
  return acc;
}

// Twisted transfer matrix str_0( Rt_{0n}(x0 - x_n) ... Rt_{01}(x0 - x_1)
// (g (x) I) ) built on the enlarged (n+1)-slot space.
template <class S>
GradedOp<S> transfer_matrix(const S& x0, const ChainConfig<S>& cfg, RFamily family) {
  validate_chain_config(cfg, family);
  const int n = cfg.n();
  const TensorSpace big(cfg.grading, n + 1);
  if (is_trig_family(family)) rdetail::require_regular(x0, "zero multiplicative argument");
  GradedOp<S> acc = GradedOp<S>::identity(big);
  for (int j = n; j >= 1; --j) {
    const S d = rdetail::difference_arg(family, x0, cfg.positions[static_cast<size_t>(j) - 1]);
    if (is_rational_family(family))
      rdetail::require_regular(d, "transfer argument equals a position");
    else
      rdetail::require_regular(rdetail::expm(d), "transfer argument equals a position");
    acc = acc * embed_units(build_r_rescaled(family, cfg.grading, d, cfg.params.coupling), {0, j},
                            big);
  }
  acc = acc * embed_twist(cfg.twist, 0, big);
  return partial_supertrace_slot0(acc);
}

// Closed form of T(+-infinity) for the trigonometric families: diagonal with
// entry sum_{a bosonic} g_a q^{+-M_a(J)} - sum_{a fermionic} g_a q^{-+M_a(J)}
// on the basis word J, where M_a(J) counts the letter a. The operator
// exponentials e^{+-eta M_a} reduce to these diagonal powers.
template <class S>
GradedOp<S> transfer_asymptotic(int direction, const ChainConfig<S>& cfg, RFamily family) {
  if (!is_trig_family(family))
    throw std::invalid_argument("transfer asymptotics: trigonometric families only");
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("transfer asymptotics: direction must be +1 or -1");
  validate_chain_config(cfg, family);
  const TensorSpace space = cfg.site_space();
  const S& q = cfg.params.coupling;
  GradedOp<S> out(space);
  for (size_t idx = 0; idx < space.dim(); ++idx) {
    const std::vector<int> M = space.weights(idx);
    S val(0);
    for (int a = 1; a <= space.K(); ++a) {
      const int fermion = cfg.grading.parity(a);
      const long e = static_cast<long>(direction) * (fermion ? -1 : 1) *
                     static_cast<long>(M[static_cast<size_t>(a) - 1]);
      const S term = S(cfg.twist[static_cast<size_t>(a) - 1] * pow_int(q, e));
      val = fermion ? S(val - term) : S(val + term);
    }
    if (!ScalarTraits<S>::is_zero(val)) out.add_entry(idx, idx, val);
  }
  return out;
}

// Transfer-matrix evaluation points clear of every pole: small integers
// (additive) resp. small positive integers (multiplicative), skipping any
// value colliding with a position. Deterministic.
template <class S>
std::vector<S> default_transfer_samples(const ChainConfig<S>& cfg, RFamily family, int count) {
  std::vector<S> out;
  for (long k = 2; static_cast<int>(out.size()) < count; ++k) {
    const S cand(k);
    bool ok = true;
    for (const S& x : cfg.positions) {
      const S d = rdetail::difference_arg(family, cand, x);
      const S den = is_rational_family(family) ? d : rdetail::expm(d);
      if (ScalarTraits<S>::singular_denominator(den)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(cand);
    if (k > 1000) throw std::logic_error("transfer samples: no pole-free points found");
  }
  return out;
}

// The identity battery: weight preservation, the two Hamiltonian forms,
// commutativity, sum rules, the pole/asymptotic expansions of T, Gaudin
// checks (rational), and hbar-independence of the projected K operators.
//
// The expansion checks evaluate at n+1 distinct points, which decides the
// identity completely: both sides are rational functions of the spectral
// parameter (of v = u^2 in the trig case) with simple poles at the n
// positions only and finite values at 0 and infinity, so their difference
// lies in an (n+1)-dimensional space spanned by 1 and the pole terms, and a
// Cauchy-type evaluation matrix at n+1 generic points has full rank.
template <class S>
CheckReport validate_chain_identities(const ChainConfig<S>& cfg, RFamily family,
                                      std::vector<S> transfer_samples = {}) {
  using Traits = ScalarTraits<S>;
  using Real = typename Traits::Real;
  validate_chain_config(cfg, family);
  const int n = cfg.n();
  const int need = n + 1;
  if (transfer_samples.empty()) transfer_samples = default_transfer_samples(cfg, family, need);
  if (static_cast<int>(transfer_samples.size()) < need)
    throw std::invalid_argument("chain validation: need at least n+1 transfer samples");

  CheckReport report;
  const std::string prefix = "chain/" + std::string(family_name(family)) + "/";
  const std::string where = cfg.grading.str() + " n=" + std::to_string(n);
  const TensorSpace space = cfg.site_space();
  const S& c = cfg.params.coupling;
  const auto update = [](Real& m, const Real& v) {
    if (m < v) m = v;
  };

  std::vector<GradedOp<S>> K0, Kh, H;
  K0.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    K0.push_back(k_operator(i, neutral_shift<S>(family), cfg, family));
    Kh.push_back(k_operator(i, cfg.params.shift, cfg, family));
    H.push_back(chain_hamiltonian(i, cfg, family));
  }
  std::vector<GradedOp<S>> T;
  T.reserve(transfer_samples.size());
  for (const S& s : transfer_samples) T.push_back(transfer_matrix(s, cfg, family));

  {
    bool ok = true;
    for (const auto& op : K0) ok = ok && op.preserves_weights();
    for (const auto& op : Kh) ok = ok && op.preserves_weights();
    for (const auto& op : H) ok = ok && op.preserves_weights();
    for (const auto& op : T) ok = ok && op.preserves_weights();
    report.add(prefix + "weight-preservation", ok, "",
               "K, H, T leave every weight subspace invariant (hence are even); " + where);
  }

  {
    Real res{};
    for (int i = 1; i <= n; ++i) {
      S scalar(1);
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        const S d = rdetail::difference_arg(family, cfg.positions[static_cast<size_t>(i) - 1],
                                            cfg.positions[static_cast<size_t>(j) - 1]);
        scalar = scalar * rdetail::rescale_factor(family, d, c);
      }
      update(res, (H[static_cast<size_t>(i) - 1] - K0[static_cast<size_t>(i) - 1] * scalar)
                      .max_abs());
    }
    rdetail::check_result<S>(report, prefix + "hamiltonian-forms", res,
                             "rescaled product form equals K_i^(0) times scalar; " + where);
  }

  {
    Real res{};
    for (size_t a = 0; a < H.size(); ++a)
      for (size_t b = a + 1; b < H.size(); ++b) update(res, H[a].commutator(H[b]).max_abs());
    rdetail::check_result<S>(report, prefix + "hamiltonian-commutation", res,
                             "[H_i, H_j] = 0; " + where);
  }

  {
    Real res{};
    for (size_t a = 0; a < T.size(); ++a)
      for (size_t b = a + 1; b < T.size(); ++b) update(res, T[a].commutator(T[b]).max_abs());
    rdetail::check_result<S>(report, prefix + "transfer-commutation", res,
                             "[T(x), T(y)] = 0 at the sample points; " + where);
  }

  GradedOp<S> weighted_twist(space);
  for (int a = 1; a <= space.K(); ++a)
    weighted_twist += weight_operator<S>(a, space) * cfg.twist[static_cast<size_t>(a) - 1];
  GradedOp<S> hsum(space);
  for (const auto& h : H) hsum += h;

  if (is_rational_family(family)) {
    rdetail::check_result<S>(report, prefix + "hamiltonian-sum",
                             (hsum - weighted_twist).max_abs(),
                             "sum of H_i equals sum_a g_a M_a; " + where);

    const S strg = supertrace_twist(cfg.twist, cfg.grading);
    Real res{};
    for (size_t s = 0; s < transfer_samples.size(); ++s) {
      GradedOp<S> rhs = GradedOp<S>::identity(space) * strg;
      for (int j = 1; j <= n; ++j) {
        const S d = S(transfer_samples[s] - cfg.positions[static_cast<size_t>(j) - 1]);
        rhs += H[static_cast<size_t>(j) - 1] * S(c * rdetail::inv(d));
      }
      update(res, (T[s] - rhs).max_abs());
    }
    rdetail::check_result<S>(
        report, prefix + "transfer-expansion", res,
        "T(x) = str(g) + sum_j eta H_j/(x - x_j) at n+1 points, determining the rational "
        "function completely; " + where);

    std::vector<GradedOp<S>> G;
    for (int i = 1; i <= n; ++i) G.push_back(gaudin_hamiltonian(i, cfg));
    Real cres{};
    for (size_t a = 0; a < G.size(); ++a)
      for (size_t b = a + 1; b < G.size(); ++b) update(cres, G[a].commutator(G[b]).max_abs());
    rdetail::check_result<S>(report, prefix + "gaudin-commutation", cres,
                             "Gaudin Hamiltonians commute pairwise; " + where);
    GradedOp<S> gsum(space);
    for (const auto& g : G) gsum += g;
    rdetail::check_result<S>(report, prefix + "gaudin-sum", (gsum - weighted_twist).max_abs(),
                             "Gaudin P terms cancel pairwise in the sum; " + where);
  } else {
    const GradedOp<S> tplus = transfer_asymptotic(1, cfg, family);
    const GradedOp<S> tminus = transfer_asymptotic(-1, cfg, family);

    rdetail::check_result<S>(report, prefix + "hamiltonian-sum",
                             (hsum * rdetail::expm(c) - (tplus - tminus)).max_abs(),
                             "2 sinh(eta) sum of H_i equals T(+inf) - T(-inf); " + where);

    Real ares{};
    for (int d : {1, -1}) {
      const TensorSpace big(cfg.grading, n + 1);
      GradedOp<S> acc = GradedOp<S>::identity(big);
      for (int j = n; j >= 1; --j)
        acc = acc * embed_units(r_asymptotic(family, d, cfg.grading, c), {0, j}, big);
      acc = acc * embed_twist(cfg.twist, 0, big);
      update(ares, (partial_supertrace_slot0(acc) - (d > 0 ? tplus : tminus)).max_abs());
    }
    rdetail::check_result<S>(report, prefix + "transfer-asymptotics", ares,
                             "closed diagonal form of T(+-inf) equals the supertraced product "
                             "of asymptotic R factors; " + where);

    // sinh eta in the doubled convention expm(t) = t - 1/t used throughout:
    // the halves cancel against the ones hidden in coth.
    const S sinh_eta = S(rdetail::expm(c) / S(2));
    GradedOp<S> cconst = tplus;
    for (const auto& h : H) cconst = cconst - h * sinh_eta;
    Real res{};
    for (size_t s = 0; s < transfer_samples.size(); ++s) {
      const S v0 = S(transfer_samples[s] * transfer_samples[s]);
      GradedOp<S> rhs = cconst;
      for (int k = 1; k <= n; ++k) {
        const S vk = S(cfg.positions[static_cast<size_t>(k) - 1] *
                       cfg.positions[static_cast<size_t>(k) - 1]);
        const S coth = S((v0 + vk) * rdetail::inv(S(v0 - vk)));
        rhs += H[static_cast<size_t>(k) - 1] * S(sinh_eta * coth);
      }
      update(res, (T[s] - rhs).max_abs());
    }
    rdetail::check_result<S>(
        report, prefix + "transfer-expansion", res,
        "T(x) = C + sinh(eta) sum_k H_k coth(x - x_k) with C = T(+inf) - sinh(eta) sum H_k, "
        "at n+1 points in v = u^2, determining the rational function completely; " + where);
  }

  {
    const OmegaKind kind = omega_kind_for_family(family);
    const S qv = is_trig_family(family) ? c : S(1);
    Real res{};
    int blocks = 0;
    for (const std::vector<int>& M : all_weights(space.K(), n)) {
      if (!omega_weight_admissible(kind, cfg.grading, M)) continue;
      ++blocks;
      const Covector<S> omega = build_omega(kind, cfg.grading, M, n, qv);
      for (int i = 1; i <= n; ++i)
        update(res, (omega * Kh[static_cast<size_t>(i) - 1] -
                     omega * K0[static_cast<size_t>(i) - 1])
                        .max_abs());
    }
    std::string detail = "<Omega| K_i^(hbar) = <Omega| K_i^(0) on every admissible weight "
                         "block (" + std::to_string(blocks) + " blocks); " + where;
    if (blocks == 0) detail = "no admissible weight blocks for this grading; " + where;
    rdetail::check_result<S>(report, prefix + "k-shift-invariance", res, detail);
  }

  return report;
}

}  // namespace qkzr
