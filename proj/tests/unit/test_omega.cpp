#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qkzr/omega.hpp"

using namespace qkzr;
using R = Rational;

namespace {

// Exact Gaussian elimination; returns the rank and, when the nullspace is
// one-dimensional, the null vector scaled so its first nonzero entry is 1.
std::pair<size_t, std::vector<R>> rank_and_nullvector(std::vector<std::vector<R>> rows,
                                                      size_t cols) {
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
    size_t pr = rank;
    while (pr < rows.size() && sgn(rows[pr][c]) == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[rank], rows[pr]);
    const R inv = R(1) / rows[rank][c];
    for (size_t k = c; k < cols; ++k) rows[rank][k] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      const R f = rows[r][c];
      for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<R> null(cols, R(0));
  if (rank + 1 == cols) {
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    size_t free_col = 0;
    while (free_col < cols && is_pivot[free_col]) ++free_col;
    null[free_col] = R(1);
    for (size_t r = 0; r < rank; ++r) null[pivot_col[r]] = -rows[r][free_col];
    size_t first = 0;
    while (first < cols && sgn(null[first]) == 0) ++first;
    if (first < cols) {
      const R inv = R(1) / null[first];
      for (auto& v : null) v *= inv;
    }
  }
  return {rank, null};
}

// Solves for all covectors v on the weight block annihilated by every
// operator in `ops` from the right: v * op = 0. This pins the covector down
// from its defining relations alone, independent of any closed form.
std::pair<size_t, std::vector<R>> block_nullspace(const TensorSpace& space,
                                                  const std::vector<int>& M,
                                                  const std::vector<GradedOp<R>>& ops) {
  const auto words = weight_basis(space, M);
  std::map<size_t, size_t> col_of;
  for (size_t b = 0; b < words.size(); ++b) col_of[space.encode(words[b])] = b;
  std::vector<std::vector<R>> rows;
  for (const auto& op : ops) {
    // one constraint per column c of the operator: sum_b v_b op_{b,c} = 0
    std::map<size_t, std::vector<R>> constraint;
    for (const auto& word : words) {
      const size_t b = space.encode(word);
      auto rit = op.rows().find(b);
      if (rit == op.rows().end()) continue;
      for (const auto& [c, val] : rit->second) {
        auto& row = constraint[c];
        if (row.empty()) row.assign(words.size(), R(0));
        row[col_of.at(b)] += val;
      }
    }
    for (auto& [c, row] : constraint) rows.push_back(std::move(row));
  }
  const size_t dim = words.size();
  auto [rank, null] = rank_and_nullvector(std::move(rows), dim);
  return {dim - rank, null};
}

std::vector<R> block_coefficients(const Covector<R>& w, const std::vector<int>& M) {
  std::vector<R> out;
  for (const auto& word : weight_basis(w.space(), M)) out.push_back(w.coefficient(word));
  return out;
}

OmegaKind kind_from_name(const std::string& s) {
  if (s == "SymPlus") return OmegaKind::SymPlus;
  if (s == "SymMinus") return OmegaKind::SymMinus;
  if (s == "QPlus") return OmegaKind::QPlus;
  if (s == "QMinus") return OmegaKind::QMinus;
  throw std::invalid_argument("unknown covector kind: " + s);
}

}  // namespace

TEST_CASE("inversion count") {
  CHECK(inversion_count({1, 1, 2}) == 0);
  CHECK(inversion_count({2, 1, 1}) == 2);
  CHECK(inversion_count({3, 1, 2}) == 2);
  CHECK(inversion_count({3, 2, 1}) == 3);
  CHECK(inversion_count({2, 2}) == 0);
}

TEST_CASE("admissibility rules") {
  const Grading g = make_grading(2, {1});
  CHECK(omega_weight_admissible(OmegaKind::SymPlus, g, {2, 1}));
  CHECK_FALSE(omega_weight_admissible(OmegaKind::SymPlus, g, {1, 2}));
  CHECK(omega_weight_admissible(OmegaKind::SymMinus, g, {1, 2}));
  CHECK_FALSE(omega_weight_admissible(OmegaKind::SymMinus, g, {2, 1}));
  CHECK(omega_weight_admissible(OmegaKind::QPlus, g, {3, 0}));
  CHECK_FALSE(omega_weight_admissible(OmegaKind::QMinus, g, {2, 1}));
  CHECK_THROWS_AS(build_omega<R>(OmegaKind::SymPlus, g, {1, 2}, 3), OmegaDoesNotExist);
  CHECK_THROWS_AS(build_omega<R>(OmegaKind::SymMinus, g, {2, 1}, 3), OmegaDoesNotExist);
  CHECK_THROWS_AS(build_omega<R>(OmegaKind::SymPlus, g, {1, 1}, 3), std::invalid_argument);
}

TEST_CASE("closed-form coefficients on small blocks") {
  const Grading g = make_grading(2, {1});

  const Covector<R> sp = build_omega<R>(OmegaKind::SymPlus, g, {2, 1}, 3);
  CHECK(sp.coefficient({1, 1, 2}) == R(1));
  CHECK(sp.coefficient({1, 2, 1}) == R(1));
  CHECK(sp.coefficient({2, 1, 1}) == R(1));
  CHECK(sp.supported_on_weights({2, 1}));

  const Covector<R> sm = build_omega<R>(OmegaKind::SymMinus, g, {1, 2}, 3);
  CHECK(sm.coefficient({1, 2, 2}) == R(1));
  CHECK(sm.coefficient({2, 1, 2}) == R(-1));
  CHECK(sm.coefficient({2, 2, 1}) == R(1));

  const Covector<R> qp = build_omega<R>(OmegaKind::QPlus, g, {2, 1}, 3, R(2));
  CHECK(qp.coefficient({1, 1, 2}) == R(1));
  CHECK(qp.coefficient({1, 2, 1}) == R(2));
  CHECK(qp.coefficient({2, 1, 1}) == R(4));

  const Covector<R> qm = build_omega<R>(OmegaKind::QMinus, g, {1, 2}, 3, R(2));
  CHECK(qm.coefficient({1, 2, 2}) == R(1));
  CHECK(qm.coefficient({2, 1, 2}) == R(-2));
  CHECK(qm.coefficient({2, 2, 1}) == R(4));

  // all-bosonic plus covector is the all-ones vector; all-fermionic plus is
  // the alternating sign of the permutation
  const Covector<R> ones = build_omega<R>(OmegaKind::SymPlus, make_grading(2, {1, 2}), {2, 1}, 3);
  for (const auto& word : weight_basis(ones.space(), {2, 1}))
    CHECK(ones.coefficient(word) == R(1));
  const Covector<R> alt = build_omega<R>(OmegaKind::SymPlus, make_grading(2, {}), {1, 1}, 2);
  CHECK(alt.coefficient({1, 2}) == R(1));
  CHECK(alt.coefficient({2, 1}) == R(-1));
  // all-fermionic minus covector has no marked inversions at all
  const Covector<R> fm = build_omega<R>(OmegaKind::SymMinus, make_grading(2, {}), {2, 1}, 3);
  for (const auto& word : weight_basis(fm.space(), {2, 1}))
    CHECK(fm.coefficient(word) == R(1));
}

TEST_CASE("q covectors degenerate to the rational ones at q = 1") {
  const Grading g = make_grading(3, {1});
  const std::vector<int> M = {1, 1, 1};
  const Covector<R> qp = build_omega<R>(OmegaKind::QPlus, g, M, 3, R(1));
  const Covector<R> sp = build_omega<R>(OmegaKind::SymPlus, g, M, 3);
  CHECK(block_coefficients(qp, M) == block_coefficients(sp, M));
  const Covector<R> qm = build_omega<R>(OmegaKind::QMinus, g, M, 3, R(1));
  const Covector<R> sm = build_omega<R>(OmegaKind::SymMinus, g, M, 3);
  CHECK(block_coefficients(qm, M) == block_coefficients(sm, M));
}

TEST_CASE("rational covectors solve the projection relations uniquely") {
  struct Case {
    OmegaKind kind;
    Grading g;
    std::vector<int> M;
  };
  const std::vector<Case> cases = {
      {OmegaKind::SymPlus, make_grading(2, {1}), {2, 1}},
      {OmegaKind::SymPlus, make_grading(3, {1}), {1, 1, 1}},
      {OmegaKind::SymMinus, make_grading(2, {1}), {1, 2}},
      {OmegaKind::SymMinus, make_grading(3, {1}), {1, 1, 1}},
  };
  for (const auto& c : cases) {
    CAPTURE(omega_kind_name(c.kind));
    CAPTURE(c.g.str());
    int n = 0;
    for (int m : c.M) n += m;
    const TensorSpace space(c.g, n);
    const R s(omega_sign(c.kind));
    std::vector<GradedOp<R>> ops;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        ops.push_back(permutation_op<R>(i, j, space) - GradedOp<R>::identity(space) * s);
    const auto [dim, null] = block_nullspace(space, c.M, ops);
    REQUIRE(dim == 1);
    const Covector<R> omega = build_omega<R>(c.kind, c.g, c.M, n);
    CHECK(null == block_coefficients(omega, c.M));
  }
}

TEST_CASE("q covectors solve the quantum projection relations uniquely") {
  struct Case {
    OmegaKind kind;
    Grading g;
    std::vector<int> M;
  };
  const std::vector<Case> cases = {
      {OmegaKind::QPlus, make_grading(2, {1}), {2, 1}},
      {OmegaKind::QPlus, make_grading(3, {1}), {1, 1, 1}},
      {OmegaKind::QMinus, make_grading(2, {1}), {1, 2}},
      {OmegaKind::QMinus, make_grading(3, {1}), {1, 1, 1}},
  };
  const R q(2);
  const R x(3);
  for (const auto& c : cases) {
    CAPTURE(omega_kind_name(c.kind));
    CAPTURE(c.g.str());
    int n = 0;
    for (int m : c.M) n += m;
    const TensorSpace space(c.g, n);
    const RFamily family = omega_family(c.kind);
    const int sign = omega_sign(c.kind);
    const R s(sign);
    std::vector<GradedOp<R>> ops;
    for (int i = 1; i < n; ++i) {
      const std::vector<int> slots = {i, i - 1};
      ops.push_back(embed_units(q_permutation(c.g, q), slots, space) -
                    GradedOp<R>::identity(space) * s);
      ops.push_back(embed_units(g_correction(sign, c.g, x, q), slots, space));
      ops.push_back(embed_units(build_r(family, c.g, x, q), slots, space) -
                    permutation_op<R>(i, i - 1, space) * s);
    }
    const auto [dim, null] = block_nullspace(space, c.M, ops);
    REQUIRE(dim == 1);
    const Covector<R> omega = build_omega<R>(c.kind, c.g, c.M, n, q);
    CHECK(null == block_coefficients(omega, c.M));
  }
}

TEST_CASE("projection validation passes across kinds") {
  const Grading g = make_grading(2, {1});
  const std::vector<R> args = {R(3), R(5)};

  const auto sp = validate_omega(build_omega<R>(OmegaKind::SymPlus, g, {2, 1}, 3),
                                 OmegaKind::SymPlus, R(1), {});
  REQUIRE(sp.size() == 1);
  CHECK(sp.results()[0].name == "omega/SymPlus/permutation-projection");
  CHECK(sp.all_passed());
  CHECK(sp.results()[0].residual == "0/1");

  const auto sm = validate_omega(build_omega<R>(OmegaKind::SymMinus, g, {1, 2}, 3),
                                 OmegaKind::SymMinus, R(1), {});
  CHECK(sm.all_passed());

  const auto qp = validate_omega(build_omega<R>(OmegaKind::QPlus, g, {2, 1}, 3, R(2)),
                                 OmegaKind::QPlus, R(2), args);
  REQUIRE(qp.size() == 3);
  CHECK(qp.results()[0].name == "omega/QPlus/q-permutation-projection");
  CHECK(qp.results()[1].name == "omega/QPlus/g-annihilation");
  CHECK(qp.results()[2].name == "omega/QPlus/r-projection");
  CHECK(qp.all_passed());

  const auto qm = validate_omega(build_omega<R>(OmegaKind::QMinus, g, {1, 2}, 3, R(2)),
                                 OmegaKind::QMinus, R(2), args);
  CHECK(qm.all_passed());
}

TEST_CASE("published coefficient tables match bit for bit") {
  namespace fs = std::filesystem;
  const fs::path dir(QKZR_GOLDEN_DIR);
  REQUIRE(fs::is_directory(dir));
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  REQUIRE(files.size() == 6);
  for (const auto& path : files) {
    CAPTURE(path.string());
    std::ifstream in(path);
    REQUIRE(in.good());
    const nlohmann::json doc = nlohmann::json::parse(in);
    const OmegaKind kind = kind_from_name(doc.at("kind").get<std::string>());
    const int K = doc.at("K").get<int>();
    const int n = doc.at("n").get<int>();
    std::set<int> bosons;
    for (const auto& b : doc.at("bosons")) bosons.insert(b.get<int>());
    const Grading g = make_grading(K, bosons);
    const std::vector<int> M = doc.at("weights").get<std::vector<int>>();
    const Covector<R> omega = build_omega<R>(kind, g, M, n, R(2));
    const auto& entries = doc.at("entries");
    // the table must list the whole block, so the match is exhaustive
    CHECK(entries.size() == weight_basis(omega.space(), M).size());
    for (const auto& e : entries) {
      const MultiIndex word = e.at("word").get<MultiIndex>();
      const long sign = e.at("sign").get<long>();
      const long qpow = e.value("q_power", 0L);
      const R expected = R(sign) * pow_int(R(2), qpow);
      CHECK(omega.coefficient(word) == expected);
    }
  }
}
