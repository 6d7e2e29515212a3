#pragma once

// Sparse linear operators on V^(x)n with the graded (Koszul) sign rules
// baked into the embedding of local operators.
//
// Sign conventions, once:
//   (A (x) B)(x (x) y) = (-1)^{p(B) p(x)} Ax (x) By
// extended to n factors. Concretely, a matrix unit e_ab placed at slot s
// acts on a basis vector J by
//   e_ab^(s) |J> = delta_{b, J_s} * (-1)^{(p(a)+p(b)) * (p(J_1)+...+p(J_{s-1}))}
//                  |J with slot s replaced by a>,
// and a multi-slot monomial e_{a1 b1} (x) ... (x) e_{am bm} at slots
// (s_1,...,s_m) is the operator product of the single-slot embeddings taken
// in the order written. Operators at disjoint slots supercommute, so this
// reproduces the usual graded tensor product for ascending slots and the
// standard R_{ij} convention (first tensor factor at slot i) otherwise.

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qkzr/scalar.hpp"
#include "qkzr/space.hpp"

namespace qkzr {

// One matrix unit e_ab: maps basis letter b to letter a.
struct MatrixUnit {
  int a;
  int b;
};

// A local operator presented as a sum of matrix-unit monomials,
// sum_t coeff_t * e_{a1 b1} (x) ... (x) e_{am bm). All R-matrices, graded
// permutations and twists are built in this form; it keeps the graded
// tensor-product signs unambiguous (a dense matrix on V (x) V does not).
template <class S>
struct LocalTerm {
  S coeff;
  std::vector<MatrixUnit> units;  // one per local tensor factor
};

template <class S>
using LocalOp = std::vector<LocalTerm<S>>;

template <class S>
class GradedOp {
 public:
  using Traits = ScalarTraits<S>;
  // row -> (col -> value); absent entries are zero.
  using Rows = std::map<size_t, std::map<size_t, S>>;

  GradedOp() = default;
  explicit GradedOp(TensorSpace space) : space_(std::move(space)) {}

  static GradedOp zero(const TensorSpace& space) { return GradedOp(space); }

  static GradedOp identity(const TensorSpace& space) {
    GradedOp op(space);
    for (size_t i = 0; i < space.dim(); ++i) op.rows_[i][i] = S(1);
    return op;
  }

  // Diagonal operator from values per local letter: sum_slots sum_a v_a e_aa^(slot)
  // is NOT this; this is the multiplicative diagonal prod_slots v_{J_slot}.
  // Used for twists g^(x)...(x)g is not needed either; see weight_operator and
  // embed_one_site for the per-slot versions.

  const TensorSpace& space() const { return space_; }
  const Rows& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  void add_entry(size_t row, size_t col, const S& v) {
    if (Traits::is_zero(v)) return;
    auto& cell = rows_[row][col];
    cell = cell + v;
    if (Traits::is_zero(cell)) {
      rows_[row].erase(col);
      if (rows_[row].empty()) rows_.erase(row);
    }
  }

  S entry(size_t row, size_t col) const {
    auto r = rows_.find(row);
    if (r == rows_.end()) return S(0);
    auto c = r->second.find(col);
    if (c == r->second.end()) return S(0);
    return c->second;
  }

  GradedOp& operator+=(const GradedOp& o) {
    check_same_space(o);
    for (const auto& [r, cols] : o.rows_)
      for (const auto& [c, v] : cols) add_entry(r, c, v);
    return *this;
  }
  GradedOp operator+(const GradedOp& o) const {
    GradedOp out = *this;
    out += o;
    return out;
  }
  GradedOp operator-(const GradedOp& o) const {
    GradedOp out = *this;
    for (const auto& [r, cols] : o.rows_)
      for (const auto& [c, v] : cols) out.add_entry(r, c, S(0) - v);
    return out;
  }
  GradedOp operator*(const S& s) const {
    GradedOp out(space_);
    if (Traits::is_zero(s)) return out;
    for (const auto& [r, cols] : rows_)
      for (const auto& [c, v] : cols) out.add_entry(r, c, v * s);
    return out;
  }

  // Operator product, sparse row-major.
  GradedOp operator*(const GradedOp& o) const {
    check_same_space(o);
    GradedOp out(space_);
    for (const auto& [r, cols] : rows_) {
      for (const auto& [k, v] : cols) {
        auto rk = o.rows_.find(k);
        if (rk == o.rows_.end()) continue;
        for (const auto& [c, w] : rk->second) out.add_entry(r, c, v * w);
      }
    }
    return out;
  }

  GradedOp commutator(const GradedOp& o) const { return (*this) * o - o * (*this); }

  bool operator==(const GradedOp& o) const { return space_ == o.space_ && rows_ == o.rows_; }

  // Largest entry magnitude; the residual norm of every identity check.
  typename Traits::Real max_abs() const {
    typename Traits::Real m(0);
    for (const auto& [r, cols] : rows_) {
      for (const auto& [c, v] : cols) {
        typename Traits::Real a = Traits::abs_value(v);
        if (m < a) m = a;
      }
    }
    return m;
  }

  // Parity of the operator: 0 or 1 if every nonzero entry connects basis
  // vectors of fixed parity difference, nullopt if mixed.
  std::optional<int> parity() const {
    std::optional<int> p;
    for (const auto& [r, cols] : rows_) {
      for (const auto& [c, v] : cols) {
        int q = space_.parity(r) ^ space_.parity(c);
        if (!p) {
          p = q;
        } else if (*p != q) {
          return std::nullopt;
        }
      }
    }
    return p ? p : std::optional<int>(0);
  }

  // True when every nonzero entry stays inside one weight subspace.
  bool preserves_weights() const {
    for (const auto& [r, cols] : rows_) {
      for (const auto& [c, v] : cols) {
        if (space_.weights(r) != space_.weights(c)) return false;
      }
    }
    return true;
  }

 private:
  void check_same_space(const GradedOp& o) const {
    if (space_ != o.space_) throw std::invalid_argument("graded op: space mismatch");
  }

  TensorSpace space_;
  Rows rows_;
};

// Embeds one matrix-unit monomial at the given slots (pairwise distinct).
// The single pass below applies the unit factors right-to-left to each basis
// vector, tracking the Koszul sign against the *current* (partially updated)
// word, which is exactly the operator product of single-slot embeddings.
template <class S>
void embed_term_into(GradedOp<S>& acc, const TensorSpace& space, const S& coeff,
                     const std::vector<MatrixUnit>& units, const std::vector<int>& slots) {
  if (units.size() != slots.size()) {
    throw std::invalid_argument("embed: one slot per tensor factor required");
  }
  for (size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] < 0 || slots[i] >= space.slots()) {
      throw std::invalid_argument("embed: slot out of range");
    }
    for (size_t j = i + 1; j < slots.size(); ++j) {
      if (slots[i] == slots[j]) throw std::invalid_argument("embed: repeated slot");
    }
  }
  if (ScalarTraits<S>::is_zero(coeff)) return;
  const Grading& g = space.grading();
  for (size_t col = 0; col < space.dim(); ++col) {
    MultiIndex J = space.decode(col);
    int sign_parity = 0;
    bool alive = true;
    for (size_t t = units.size(); t-- > 0;) {
      const MatrixUnit& u = units[t];
      int slot = slots[t];
      if (J[static_cast<size_t>(slot)] != u.b) {
        alive = false;
        break;
      }
      int unit_parity = g.parity(u.a) ^ g.parity(u.b);
      if (unit_parity) {
        int prefix = 0;
        for (int k = 0; k < slot; ++k) prefix ^= g.parity(J[static_cast<size_t>(k)]);
        sign_parity ^= prefix;
      }
      J[static_cast<size_t>(slot)] = u.a;
    }
    if (!alive) continue;
    S v = sign_parity ? S(0) - coeff : coeff;
    acc.add_entry(space.encode(J), col, v);
  }
}

// Embeds a local operator given in matrix-unit form at the given slots.
template <class S>
GradedOp<S> embed_units(const LocalOp<S>& op, const std::vector<int>& slots,
                        const TensorSpace& space) {
  GradedOp<S> acc(space);
  for (const auto& term : op) embed_term_into(acc, space, term.coeff, term.units, slots);
  return acc;
}

// Embeds a dense one-site operator (K x K entries, entries[a-1][b-1] the
// coefficient of e_ab) at one slot. A dense *multi*-site array is ambiguous
// in the graded setting, so only the one-site dense form is accepted; the
// operator must be decomposed into matrix-unit monomials otherwise. A mixed
// one-site operator is fine (each unit carries its own parity); homogeneity
// of multi-site input is the caller's obligation via embed_units.
template <class S>
GradedOp<S> embed_one_site(const std::vector<std::vector<S>>& entries, int slot,
                           const TensorSpace& space) {
  const int K = space.K();
  if (static_cast<int>(entries.size()) != K) {
    throw std::invalid_argument("embed: dense one-site operator must be K x K");
  }
  LocalOp<S> op;
  for (int a = 1; a <= K; ++a) {
    if (static_cast<int>(entries[static_cast<size_t>(a) - 1].size()) != K) {
      throw std::invalid_argument("embed: dense one-site operator must be K x K");
    }
    for (int b = 1; b <= K; ++b) {
      const S& c = entries[static_cast<size_t>(a) - 1][static_cast<size_t>(b) - 1];
      if (!ScalarTraits<S>::is_zero(c)) op.push_back({c, {MatrixUnit{a, b}}});
    }
  }
  return embed_units(op, {slot}, space);
}

// Diagonal twist g = diag(g_1..g_K) embedded at one slot.
template <class S>
GradedOp<S> embed_twist(const std::vector<S>& g, int slot, const TensorSpace& space) {
  if (static_cast<int>(g.size()) != space.K()) {
    throw std::invalid_argument("twist must list K diagonal entries");
  }
  LocalOp<S> op;
  for (int a = 1; a <= space.K(); ++a) {
    op.push_back({g[static_cast<size_t>(a) - 1], {MatrixUnit{a, a}}});
  }
  return embed_units(op, {slot}, space);
}

// The graded permutation P as a local two-site operator:
//   P = sum_{a,b} (-1)^{p(b)} e_ab (x) e_ba.
template <class S>
LocalOp<S> permutation_local(const Grading& g) {
  LocalOp<S> op;
  for (int a = 1; a <= g.K(); ++a) {
    for (int b = 1; b <= g.K(); ++b) {
      S c = g.parity(b) ? S(-1) : S(1);
      op.push_back({c, {MatrixUnit{a, b}, MatrixUnit{b, a}}});
    }
  }
  return op;
}

// P embedded at two distinct slots. P_{ij} swaps the factors at slots i and j
// with the sign (-1)^{p(x)p(y)}; it is symmetric in (i,j).
template <class S>
GradedOp<S> permutation_op(int slot_i, int slot_j, const TensorSpace& space) {
  if (slot_i == slot_j) throw std::invalid_argument("permutation: slots must differ");
  return embed_units(permutation_local<S>(space.grading()), {slot_i, slot_j}, space);
}

// Identity on V (x) V in matrix-unit form.
template <class S>
LocalOp<S> identity_local(const Grading& g) {
  LocalOp<S> op;
  for (int a = 1; a <= g.K(); ++a)
    for (int b = 1; b <= g.K(); ++b) op.push_back({S(1), {MatrixUnit{a, a}, MatrixUnit{b, b}}});
  return op;
}

// Occupation-count operator M_a: diagonal, counts letter a.
template <class S>
GradedOp<S> weight_operator(int a, const TensorSpace& space) {
  if (a < 1 || a > space.K()) throw std::invalid_argument("weight operator: letter out of range");
  GradedOp<S> op(space);
  for (size_t i = 0; i < space.dim(); ++i) {
    int count = space.weights(i)[static_cast<size_t>(a) - 1];
    if (count) op.add_entry(i, i, S(count));
  }
  return op;
}

// Supertrace str A = sum_J (-1)^{p(J)} A_JJ.
template <class S>
S supertrace(const GradedOp<S>& op) {
  S acc(0);
  for (const auto& [r, cols] : op.rows()) {
    auto c = cols.find(r);
    if (c == cols.end()) continue;
    acc = acc + (op.space().parity(r) ? S(0) - c->second : c->second);
  }
  return acc;
}

// Supertrace of diag(g) on one local factor: sum_a (-1)^{p(a)} g_a.
template <class S>
S supertrace_twist(const std::vector<S>& g, const Grading& grading) {
  if (static_cast<int>(g.size()) != grading.K()) {
    throw std::invalid_argument("twist must list K diagonal entries");
  }
  S acc(0);
  for (int a = 1; a <= grading.K(); ++a) {
    const S& v = g[static_cast<size_t>(a) - 1];
    acc = acc + (grading.parity(a) ? S(0) - v : v);
  }
  return acc;
}

// Partial supertrace over slot 0 of an (n+1)-slot space:
//   (str_0 A)_{J,J'} = sum_a (-1)^{p(a)} A_{(a,J),(a,J')}.
// For even single-factor operators M this satisfies str_0(P_{0i} M^(0)) = M^(i);
// every use in scope (twists, R-matrices) is even.
template <class S>
GradedOp<S> partial_supertrace_slot0(const GradedOp<S>& op) {
  const TensorSpace& big = op.space();
  if (big.slots() < 2) throw std::invalid_argument("partial supertrace: need >= 2 slots");
  TensorSpace small(big.grading(), big.slots() - 1);
  const size_t small_dim = small.dim();
  GradedOp<S> out(small);
  for (const auto& [r, cols] : op.rows()) {
    const size_t a_row = r / small_dim;
    const size_t r_rest = r % small_dim;
    const int sign = big.grading().parity(static_cast<int>(a_row) + 1);
    for (const auto& [c, v] : cols) {
      if (c / small_dim != a_row) continue;
      out.add_entry(r_rest, c % small_dim, sign ? S(0) - v : v);
    }
  }
  return out;
}

}  // namespace qkzr
