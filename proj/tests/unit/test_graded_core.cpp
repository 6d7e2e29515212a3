#include <set>

#include "doctest.h"
#include "qkzr/graded_op.hpp"
#include "qkzr/grading.hpp"
#include "qkzr/space.hpp"

using namespace qkzr;
using R = Rational;

TEST_CASE("grading basics") {
  const Grading g = make_grading(3, {1, 3});
  CHECK(g.K() == 3);
  CHECK(g.parity(1) == 0);
  CHECK(g.parity(2) == 1);
  CHECK(g.parity(3) == 0);
  CHECK(g.num_bosons() == 2);
  CHECK(g.num_fermions() == 1);
  CHECK(g.str() == "p=(0,1,0)");
  CHECK_THROWS_AS(make_grading(2, {3}), std::invalid_argument);
  CHECK_THROWS_AS(g.parity(0), std::invalid_argument);

  const Grading f = grading_flip(g);
  CHECK(f.str() == "p=(1,0,1)");
  CHECK(grading_flip(f) == g);

  const auto all = all_gradings(2);
  REQUIRE(all.size() == 4);
  CHECK(all[0].str() == "p=(1,1)");
  CHECK(all[1].str() == "p=(0,1)");
  CHECK(all[2].str() == "p=(1,0)");
  CHECK(all[3].str() == "p=(0,0)");
}

TEST_CASE("tensor space encoding is big-endian lexicographic") {
  const TensorSpace sp(make_grading(3, {1}), 3);
  CHECK(sp.dim() == 27);
  for (size_t idx = 0; idx < sp.dim(); ++idx) {
    CHECK(sp.encode(sp.decode(idx)) == idx);
  }
  CHECK(sp.encode({1, 1, 1}) == 0);
  CHECK(sp.encode({1, 1, 2}) == 1);
  CHECK(sp.encode({1, 2, 1}) == 3);
  CHECK(sp.encode({2, 1, 1}) == 9);
  CHECK(sp.encode({3, 3, 3}) == 26);
  // lexicographic comparison of words matches the linear order
  for (size_t a = 0; a + 1 < sp.dim(); ++a) {
    CHECK(sp.decode(a) < sp.decode(a + 1));
  }
  CHECK(sp.letter_at(sp.encode({2, 1, 3}), 0) == 2);
  CHECK(sp.letter_at(sp.encode({2, 1, 3}), 2) == 3);
  CHECK(multiindex_str({2, 1, 3}) == "(2,1,3)");
  CHECK_THROWS_AS(sp.encode({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(sp.encode({1, 1, 4}), std::invalid_argument);
}

TEST_CASE("parities and weights of basis words") {
  const Grading g = make_grading(2, {1});
  const TensorSpace sp(g, 3);
  const size_t idx = sp.encode({2, 1, 2});
  CHECK(sp.parity(idx) == 0);
  CHECK(sp.parity(sp.encode({2, 1, 1})) == 1);
  CHECK(sp.parity_prefix(idx, 0) == 0);
  CHECK(sp.parity_prefix(idx, 1) == 1);
  CHECK(sp.parity_prefix(idx, 2) == 1);
  CHECK(sp.weights(idx) == std::vector<int>{1, 2});
}

TEST_CASE("weight bases and weight enumeration") {
  const TensorSpace sp(make_grading(2, {1}), 3);
  const auto basis = weight_basis(sp, {2, 1});
  REQUIRE(basis.size() == 3);
  CHECK(basis[0] == MultiIndex{1, 1, 2});
  CHECK(basis[1] == MultiIndex{1, 2, 1});
  CHECK(basis[2] == MultiIndex{2, 1, 1});
  CHECK_THROWS_AS(weight_basis(sp, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(weight_basis(sp, {2, 1, 0}), std::invalid_argument);

  const TensorSpace sp3(make_grading(3, {}), 3);
  CHECK(weight_basis(sp3, {1, 1, 1}).size() == 6);

  const auto w23 = all_weights(2, 3);
  REQUIRE(w23.size() == 4);
  CHECK(w23[0] == std::vector<int>{0, 3});
  CHECK(w23[3] == std::vector<int>{3, 0});
  CHECK(all_weights(3, 4).size() == 15);
  for (const auto& M : all_weights(3, 4)) {
    CHECK(M[0] + M[1] + M[2] == 4);
  }
}

TEST_CASE("graded permutation signs") {
  const Grading g = make_grading(2, {1});
  const TensorSpace sp(g, 2);
  const GradedOp<R> p = permutation_op<R>(0, 1, sp);
  // P|xy> = (-1)^{p(x)p(y)} |yx>
  CHECK(p.entry(sp.encode({1, 1}), sp.encode({1, 1})) == R(1));
  CHECK(p.entry(sp.encode({2, 1}), sp.encode({1, 2})) == R(1));
  CHECK(p.entry(sp.encode({1, 2}), sp.encode({2, 1})) == R(1));
  CHECK(p.entry(sp.encode({2, 2}), sp.encode({2, 2})) == R(-1));
  CHECK(p.entry(sp.encode({1, 2}), sp.encode({1, 2})) == R(0));
  CHECK((p * p) == GradedOp<R>::identity(sp));
  CHECK(p == permutation_op<R>(1, 0, sp));
  CHECK(p.parity() == 0);
  CHECK(p.preserves_weights());
}

TEST_CASE("non-adjacent permutation factors through adjacent ones") {
  for (const Grading& g : all_gradings(2)) {
    const TensorSpace sp(g, 3);
    const GradedOp<R> p01 = permutation_op<R>(0, 1, sp);
    const GradedOp<R> p12 = permutation_op<R>(1, 2, sp);
    const GradedOp<R> p02 = permutation_op<R>(0, 2, sp);
    CHECK(p02 == p12 * p01 * p12);
    CHECK(p02 == p01 * p12 * p01);
    CHECK((p02 * p02) == GradedOp<R>::identity(sp));
  }
}

TEST_CASE("single-unit embeddings and operator parity") {
  const Grading g = make_grading(2, {1});
  const TensorSpace sp(g, 2);
  LocalOp<R> e12;
  e12.push_back({R(1), {MatrixUnit{1, 2}}});
  const GradedOp<R> a = embed_units(e12, {1}, sp);
  CHECK(a.entry(sp.encode({1, 1}), sp.encode({1, 2})) == R(1));
  CHECK(a.entry(sp.encode({2, 1}), sp.encode({2, 2})) == R(-1));
  CHECK(a.parity() == 1);
  CHECK_FALSE(a.preserves_weights());

  // the same unit at slot 0 picks up no prefix sign; at slot 1 it picks up
  // the parity of the letter in slot 0
  const GradedOp<R> b = embed_units(e12, {0}, sp);
  CHECK(b.entry(sp.encode({1, 2}), sp.encode({2, 2})) == R(1));
  LocalOp<R> e21;
  e21.push_back({R(1), {MatrixUnit{2, 1}}});
  const GradedOp<R> c = embed_units(e21, {1}, sp);
  CHECK(c.entry(sp.encode({1, 2}), sp.encode({1, 1})) == R(1));
  CHECK(c.entry(sp.encode({2, 2}), sp.encode({2, 1})) == R(-1));

  const std::vector<std::vector<R>> dense = {{R(0), R(1)}, {R(0), R(0)}};
  CHECK(embed_one_site(dense, 1, sp) == a);
  CHECK_THROWS_AS(embed_units(e12, {2}, sp), std::invalid_argument);
  CHECK_THROWS_AS(permutation_op<R>(1, 1, sp), std::invalid_argument);
}

TEST_CASE("supertrace") {
  const Grading g = make_grading(2, {1});
  const TensorSpace sp(g, 2);
  CHECK(supertrace(GradedOp<R>::identity(sp)) == R(0));
  const TensorSpace bos(make_grading(2, {1, 2}), 2);
  CHECK(supertrace(GradedOp<R>::identity(bos)) == R(4));
  const TensorSpace fer(make_grading(2, {}), 2);
  CHECK(supertrace(GradedOp<R>::identity(fer)) == R(4));
  CHECK(supertrace(permutation_op<R>(0, 1, sp)) == R(0));

  const std::vector<R> tw = {R(2), R(3)};
  CHECK(supertrace_twist(tw, g) == R(-1));
  CHECK(supertrace_twist(tw, make_grading(2, {1, 2})) == R(5));
  // str of g (x) g over two slots is (str g)^2
  const GradedOp<R> gg = embed_twist(tw, 0, sp) * embed_twist(tw, 1, sp);
  CHECK(supertrace(gg) == R(1));
}

TEST_CASE("partial supertrace over the auxiliary slot") {
  const Grading g = make_grading(2, {1});
  const TensorSpace big(g, 3);
  const TensorSpace small(g, 2);
  const std::vector<R> tw = {R(2), R(3)};

  // str_0 (A (x) I) = (str A) I
  const GradedOp<R> lone = embed_twist(tw, 0, big);
  CHECK(partial_supertrace_slot0(lone) ==
        GradedOp<R>::identity(small) * supertrace_twist(tw, g));

  // str_0 (P_{0i} M^(0)) = M^(i) for an even one-site M
  for (int i = 1; i <= 2; ++i) {
    const GradedOp<R> prod = permutation_op<R>(0, i, big) * embed_twist(tw, 0, big);
    CHECK(partial_supertrace_slot0(prod) == embed_twist(tw, i - 1, small));
  }
  CHECK_THROWS_AS(partial_supertrace_slot0(embed_twist(tw, 0, TensorSpace(g, 1))),
                  std::invalid_argument);
}

TEST_CASE("weight operator counts letters") {
  const TensorSpace sp(make_grading(2, {1}), 3);
  const GradedOp<R> m1 = weight_operator<R>(1, sp);
  const size_t idx = sp.encode({1, 2, 1});
  CHECK(m1.entry(idx, idx) == R(2));
  CHECK(weight_operator<R>(2, sp).entry(idx, idx) == R(1));
  CHECK(m1.entry(sp.encode({2, 2, 2}), sp.encode({2, 2, 2})) == R(0));
  CHECK(m1.parity() == 0);
}

TEST_CASE("graded op arithmetic and max_abs") {
  const TensorSpace sp(make_grading(2, {1}), 2);
  GradedOp<R> a(sp);
  a.add_entry(0, 0, R(1) / 2);
  a.add_entry(1, 2, R(-3) / 4);
  CHECK(a.max_abs() == R(3) / 4);
  CHECK((a - a).max_abs() == R(0));
  CHECK((a - a).empty());
  a.add_entry(1, 2, R(3) / 4);
  CHECK(a.entry(1, 2) == R(0));
  const GradedOp<R> i = GradedOp<R>::identity(sp);
  CHECK(a.commutator(i).max_abs() == R(0));
  CHECK(a.parity() == 0);

  GradedOp<R> mixed(sp);
  mixed.add_entry(sp.encode({1, 1}), sp.encode({1, 1}), R(1));
  mixed.add_entry(sp.encode({1, 1}), sp.encode({1, 2}), R(1));
  CHECK_FALSE(mixed.parity().has_value());
}
