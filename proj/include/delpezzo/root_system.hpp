#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "delpezzo/dynkin.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/linalg.hpp"

namespace delpezzo {

inline constexpr int kMaxRoots = 240;
using RootMask = std::bitset<kMaxRoots>;

/// R(kit(r)) with roots indexed in kit order and precomputed arithmetic tables.
class RootSystem {
 public:
  explicit RootSystem(int r) : rank_(r), roots_(enumerate_roots(r)) {
    n_ = static_cast<int>(roots_.size());
    neg_.resize(n_);
    positive_.resize(n_);
    gram_.resize(n_ * n_);
    sum_.assign(n_ * n_, -1);
    orth_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      neg_[i] = index_of(-roots_[i]);
      positive_[i] = is_positive(roots_[i]);
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        int g = intersect(roots_[i], roots_[j]);
        gram_[i * n_ + j] = static_cast<std::int8_t>(g);
        if (g == 0) orth_[i].set(j);
        // a sum of two roots is a root exactly when their product is 1
        if (g == 1) sum_[i * n_ + j] = static_cast<std::int16_t>(index_of(roots_[i] + roots_[j]));
      }
  }

  int rank() const { return rank_; }
  int size() const { return n_; }
  const std::vector<PicardVector>& roots() const { return roots_; }
  const PicardVector& root(int i) const { return roots_[i]; }
  int neg(int i) const { return neg_[i]; }
  bool positive(int i) const { return positive_[i]; }
  int dot(int i, int j) const { return gram_[i * n_ + j]; }
  int sum(int i, int j) const { return sum_[i * n_ + j]; }
  const RootMask& orthogonal(int i) const { return orth_[i]; }

  int index_of(const PicardVector& v) const {
    auto it = std::lower_bound(roots_.begin(), roots_.end(), v, KitLess{});
    if (it == roots_.end() || *it != v) return -1;
    return static_cast<int>(it - roots_.begin());
  }

  RootMask all() const {
    RootMask m;
    for (int i = 0; i < n_; ++i) m.set(i);
    return m;
  }

  RootMask positives() const {
    RootMask m;
    for (int i = 0; i < n_; ++i)
      if (positive_[i]) m.set(i);
    return m;
  }

  /// Index of the reflection of root x in root l.
  int reflect(int l, int x) const {
    switch (dot(l, x)) {
      case 0: return x;
      case 1: return sum(x, l);
      case -1: return sum(x, neg(l));
      case 2: return l;
      default: return neg(l);
    }
  }

  std::vector<PicardVector> vectors(const RootMask& m) const {
    std::vector<PicardVector> out;
    for (int i = 0; i < n_; ++i)
      if (m.test(i)) out.push_back(roots_[i]);
    return out;
  }

  std::vector<int> indices(const RootMask& m) const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (m.test(i)) out.push_back(i);
    return out;
  }

  RootMask mask_of(const std::vector<int>& idx) const {
    RootMask m;
    for (int i : idx) m.set(i);
    return m;
  }

  /// Smallest reflection-closed set containing the given roots.
  RootMask closure(const std::vector<int>& gens) const {
    RootMask m;
    std::vector<int> stack;
    for (int g : gens) {
      for (int x : {g, neg(g)})
        if (!m.test(x)) {
          m.set(x);
          stack.push_back(x);
        }
    }
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int g : gens) {
        int y = reflect(g, x);
        if (!m.test(y)) {
          m.set(y);
          stack.push_back(y);
        }
      }
    }
    return m;
  }

  /// Roots orthogonal to every given root.
  RootMask complement(const std::vector<int>& s) const {
    RootMask m = all();
    for (int i : s) m &= orth_[i];
    return m;
  }

  /// Roots lying in the rational span of the given roots.
  RootMask span(const std::vector<int>& s) const {
    if (s.empty()) return {};
    int dim = rank_ + 1;
    // w with w.b = 0 for all b; then v lies in span(s) iff v.w = 0 for all such w
    RMatrix rows;
    for (int i : s) {
      std::vector<Rational> row(dim);
      row[0] = roots_[i][0];
      for (int j = 1; j < dim; ++j) row[j] = -roots_[i][j];
      rows.push_back(std::move(row));
    }
    RMatrix ker = kernel(rows, dim);
    std::vector<std::vector<long>> w;
    for (auto& k : ker) {
      mpz_class den = 1;
      for (auto& x : k) den = lcm(den, x.get_den());
      std::vector<long> iv(dim);
      for (int j = 0; j < dim; ++j) {
        Rational y = k[j] * den;
        iv[j] = y.get_num().get_si();
      }
      w.push_back(iv);
    }
    RootMask m;
    for (int i = 0; i < n_; ++i) {
      bool in = true;
      for (const auto& iv : w) {
        long d = roots_[i][0] * iv[0];
        for (int j = 1; j < dim; ++j) d -= roots_[i][j] * iv[j];
        if (d != 0) {
          in = false;
          break;
        }
      }
      if (in) m.set(i);
    }
    return m;
  }

  /// Positive members of a subsystem that are not sums of two positive members.
  std::vector<int> simple_roots(const RootMask& sub) const {
    std::vector<int> pos;
    for (int i = 0; i < n_; ++i)
      if (sub.test(i) && positive_[i]) pos.push_back(i);
    std::vector<int> out;
    for (int p : pos) {
      bool dec = false;
      for (int q : pos) {
        int d = sum(p, neg(q));
        if (d >= 0 && sub.test(d) && positive_[d]) {
          dec = true;
          break;
        }
      }
      if (!dec) out.push_back(p);
    }
    return out;
  }

  std::string type_of_basis(const std::vector<int>& basis) const {
    std::vector<PicardVector> b;
    for (int i : basis) b.push_back(roots_[i]);
    return dynkin_type(b).type_string;
  }

  std::string type_of(const RootMask& sub) const { return type_of_basis(simple_roots(sub)); }

 private:
  int rank_;
  int n_ = 0;
  std::vector<PicardVector> roots_;
  std::vector<int> neg_;
  std::vector<bool> positive_;
  std::vector<std::int8_t> gram_;
  std::vector<std::int16_t> sum_;
  std::vector<RootMask> orth_;
};

/// Shared immutable root system for rank r (built once).
inline const RootSystem& root_system(int r) {
  check_kit_rank(r);
  static std::array<std::once_flag, kMaxRank + 1> flags;
  static std::array<std::unique_ptr<RootSystem>, kMaxRank + 1> cache;
  std::call_once(flags[r], [r] { cache[r] = std::make_unique<RootSystem>(r); });
  return *cache[r];
}

}  // namespace delpezzo
