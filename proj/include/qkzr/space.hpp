#pragma once

// Tensor-power space V^(x)n over the graded local space, with the basis
// indexing fixed once and for all: a multi-index (j_1,...,j_n), j_k in 1..K,
// maps to the linear index sum (j_k - 1) * K^(n-k). Big-endian, slot 1 most
// significant, matching lexicographic order of multi-indices.
//
// Transfer-matrix computations enlarge the chain by an auxiliary factor in
// front; that is just a TensorSpace with one more slot, with the auxiliary
// factor occupying slot 0 by convention (see chain.hpp).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkzr/grading.hpp"

namespace qkzr {

using MultiIndex = std::vector<int>;  // letters in 1..K

class TensorSpace {
 public:
  TensorSpace() = default;
  TensorSpace(Grading grading, int slots) : grading_(std::move(grading)), slots_(slots) {
    if (slots_ < 1) throw std::invalid_argument("space: need at least one tensor slot");
    dim_ = 1;
    for (int i = 0; i < slots_; ++i) {
      dim_ *= static_cast<size_t>(grading_.K());
    }
  }

  const Grading& grading() const { return grading_; }
  int K() const { return grading_.K(); }
  int slots() const { return slots_; }
  size_t dim() const { return dim_; }

  size_t encode(const MultiIndex& J) const {
    if (static_cast<int>(J.size()) != slots_) {
      throw std::invalid_argument("space: multi-index length mismatch");
    }
    size_t idx = 0;
    for (int k = 0; k < slots_; ++k) {
      int j = J[static_cast<size_t>(k)];
      if (j < 1 || j > K()) throw std::invalid_argument("space: letter out of range");
      idx = idx * static_cast<size_t>(K()) + static_cast<size_t>(j - 1);
    }
    return idx;
  }

  MultiIndex decode(size_t idx) const {
    if (idx >= dim_) throw std::invalid_argument("space: linear index out of range");
    MultiIndex J(static_cast<size_t>(slots_));
    for (int k = slots_ - 1; k >= 0; --k) {
      J[static_cast<size_t>(k)] = static_cast<int>(idx % static_cast<size_t>(K())) + 1;
      idx /= static_cast<size_t>(K());
    }
    return J;
  }

  // Letter at a given slot of a linearly encoded basis vector, without
  // materializing the whole multi-index.
  int letter_at(size_t idx, int slot) const {
    size_t div = 1;
    for (int k = slots_ - 1; k > slot; --k) div *= static_cast<size_t>(K());
    return static_cast<int>((idx / div) % static_cast<size_t>(K())) + 1;
  }

  // Parity of a basis vector: sum of letter parities mod 2.
  int parity(size_t idx) const {
    int p = 0;
    for (int k = 0; k < slots_; ++k) p ^= grading_.parity(letter_at(idx, k));
    return p;
  }

  // Sum of parities of the letters strictly left of `slot`; this is the
  // exponent in the Koszul sign of a single-slot embedding.
  int parity_prefix(size_t idx, int slot) const {
    int p = 0;
    for (int k = 0; k < slot; ++k) p ^= grading_.parity(letter_at(idx, k));
    return p;
  }

  // Occupation counts (M_1,...,M_K) of a basis vector.
  std::vector<int> weights(size_t idx) const {
    std::vector<int> M(static_cast<size_t>(K()), 0);
    for (int k = 0; k < slots_; ++k) M[static_cast<size_t>(letter_at(idx, k)) - 1]++;
    return M;
  }

  bool operator==(const TensorSpace& o) const {
    return grading_ == o.grading_ && slots_ == o.slots_;
  }
  bool operator!=(const TensorSpace& o) const { return !(*this == o); }

 private:
  Grading grading_;
  int slots_ = 0;
  size_t dim_ = 0;
};

// All multi-indices with occupation counts M (sum M_a = n), in lexicographic
// order; the first element is the weakly increasing word. This is the weight
// subspace basis every covector lives on.
inline std::vector<MultiIndex> weight_basis(const TensorSpace& space, const std::vector<int>& M) {
  if (static_cast<int>(M.size()) != space.K()) {
    throw std::invalid_argument("weight_basis: weights must list K entries");
  }
  int total = 0;
  for (int m : M) {
    if (m < 0) throw std::invalid_argument("weight_basis: weights must be nonnegative");
    total += m;
  }
  if (total != space.slots()) {
    throw std::invalid_argument("weights must sum to n");
  }
  MultiIndex word;
  for (int a = 1; a <= space.K(); ++a) {
    word.insert(word.end(), static_cast<size_t>(M[static_cast<size_t>(a) - 1]), a);
  }
  std::vector<MultiIndex> basis;
  // next_permutation over the sorted word walks the orbit in lex order.
  do {
    basis.push_back(word);
  } while (std::next_permutation(word.begin(), word.end()));
  return basis;
}

// All occupation-count vectors (M_1,...,M_K) with sum n, in lexicographic
// order. Enumerating these walks every weight subspace of V^(x)n once.
inline std::vector<std::vector<int>> all_weights(int K, int n) {
  if (K < 1 || n < 0) throw std::invalid_argument("all_weights: need K >= 1, n >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> M(static_cast<size_t>(K), 0);
  const std::function<void(int, int)> fill = [&](int a, int left) {
    if (a == K - 1) {
      M[static_cast<size_t>(a)] = left;
      out.push_back(M);
      return;
    }
    for (int m = 0; m <= left; ++m) {
      M[static_cast<size_t>(a)] = m;
      fill(a + 1, left - m);
    }
  };
  fill(0, n);
  return out;
}

inline std::string multiindex_str(const MultiIndex& J) {
  std::string s = "(";
  for (size_t k = 0; k < J.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(J[k]);
  }
  return s + ")";
}

}  // namespace qkzr
