#pragma once

// Z2 grading of the local space C^{N|M}. Basis letters are 1..K with
// K = N + M; parity 0 marks bosons, parity 1 fermions. The grading is the
// single piece of data every Koszul sign in the tensor algebra derives from.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkzr {

class Grading {
 public:
  Grading() = default;
  Grading(int K, std::vector<uint8_t> parity) : K_(K), parity_(std::move(parity)) {
    if (K_ < 1) throw std::invalid_argument("grading: K must be >= 1");
    if (static_cast<int>(parity_.size()) != K_) {
      throw std::invalid_argument("grading: parity table size must equal K");
    }
    for (uint8_t p : parity_) {
      if (p > 1) throw std::invalid_argument("grading: parity values must be 0 or 1");
    }
  }

  int K() const { return K_; }

  // Parity of letter a in 1..K.
  int parity(int a) const {
    if (a < 1 || a > K_) throw std::invalid_argument("grading: letter out of range");
    return parity_[static_cast<size_t>(a) - 1];
  }

  bool is_boson(int a) const { return parity(a) == 0; }

  int num_bosons() const {
    int n = 0;
    for (uint8_t p : parity_) n += (p == 0);
    return n;
  }
  int num_fermions() const { return K_ - num_bosons(); }

  bool operator==(const Grading& o) const { return K_ == o.K_ && parity_ == o.parity_; }
  bool operator!=(const Grading& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "p=(";
    for (int a = 1; a <= K_; ++a) {
      if (a > 1) s += ",";
      s += std::to_string(parity(a));
    }
    return s + ")";
  }

 private:
  int K_ = 0;
  std::vector<uint8_t> parity_;
};

// Builds a grading from the set of bosonic letters; everything else is
// fermionic. Letters outside 1..K are rejected.
inline Grading make_grading(int K, const std::set<int>& bosons) {
  if (K < 1) throw std::invalid_argument("grading: K must be >= 1");
  std::vector<uint8_t> parity(static_cast<size_t>(K), 1);
  for (int b : bosons) {
    if (b < 1 || b > K) {
      throw std::invalid_argument("grading: bosonic letter " + std::to_string(b) +
                                  " out of range 1.." + std::to_string(K));
    }
    parity[static_cast<size_t>(b) - 1] = 0;
  }
  return Grading(K, std::move(parity));
}

// The sign-flip relabeling: bosons become fermions and vice versa. Operators
// and covectors keep their numeric entries under this map; only the parity
// table (and hence every downstream Koszul sign) changes.
inline Grading grading_flip(const Grading& g) {
  std::vector<uint8_t> parity(static_cast<size_t>(g.K()));
  for (int a = 1; a <= g.K(); ++a) {
    parity[static_cast<size_t>(a) - 1] = static_cast<uint8_t>(1 - g.parity(a));
  }
  return Grading(g.K(), std::move(parity));
}

// Enumerates all 2^K parity assignments (by the subset of bosonic letters,
// in subset-mask order). Used by the degeneracy sweep and the axiom suites.
inline std::vector<Grading> all_gradings(int K) {
  if (K < 1) throw std::invalid_argument("grading: K must be >= 1");
  std::vector<Grading> out;
  for (unsigned mask = 0; mask < (1u << K); ++mask) {
    std::set<int> bosons;
    for (int a = 1; a <= K; ++a) {
      if (mask & (1u << (a - 1))) bosons.insert(a);
    }
    out.push_back(make_grading(K, bosons));
  }
  return out;
}

}  // namespace qkzr
