#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <vector>

#include "delpezzo/lattice.hpp"
#include "delpezzo/root_classification.hpp"
#include "delpezzo/root_system.hpp"

namespace delpezzo {

/// Zero-set F (-KC=0, C^2=-2), one-set E (1,-1), two-set G (2,0).
struct DelPezzoSets {
  std::vector<PicardVector> F, E, G;
};

inline const std::vector<CoefficientPattern>& one_set_patterns() {
  static const std::vector<CoefficientPattern> p = {
      {2, 0, {1}},
      {2, 1, {-1, -1}},
      {5, 2, {-1, -1, -1, -1, -1}},
      {7, 3, {-2, -1, -1, -1, -1, -1, -1}},
      {8, 4, {-2, -2, -2, -1, -1, -1, -1, -1}},
      {8, 5, {-2, -2, -2, -2, -2, -2, -1, -1}},
      {8, 6, {-3, -2, -2, -2, -2, -2, -2, -2}},
  };
  return p;
}

inline const std::vector<CoefficientPattern>& two_set_patterns() {
  static const std::vector<CoefficientPattern> p = {
      {2, 1, {-1}},
      {4, 2, {-1, -1, -1, -1}},
      {6, 3, {-2, -1, -1, -1, -1, -1}},
      {7, 4, {-2, -2, -2, -1, -1, -1, -1}},
      {7, 5, {-2, -2, -2, -2, -2, -2, -1}},
      {8, 4, {-3, -1, -1, -1, -1, -1, -1, -1}},
      {8, 5, {-3, -2, -2, -2, -1, -1, -1, -1}},
      {8, 6, {-3, -3, -2, -2, -2, -2, -1, -1}},
      {8, 7, {-3, -3, -3, -3, -2, -2, -2, -1}},
      {8, 7, {-4, -3, -2, -2, -2, -2, -2, -2}},
      {8, 8, {-3, -3, -3, -3, -3, -3, -3, -1}},
      {8, 8, {-4, -3, -3, -3, -3, -2, -2, -2}},
      {8, 9, {-4, -4, -3, -3, -3, -3, -3, -2}},
      {8, 10, {-4, -4, -4, -4, -3, -3, -3, -3}},
      {8, 11, {-4, -4, -4, -4, -4, -4, -4, -3}},
  };
  return p;
}

inline std::vector<PicardVector> instantiate_all(const std::vector<CoefficientPattern>& patterns, int r) {
  std::set<PicardVector> s;
  for (const auto& p : patterns) instantiate_pattern(p, r, s);
  std::vector<PicardVector> out(s.begin(), s.end());
  sort_kit(out);
  return out;
}

/// Sets built from the coefficient tables under permutations of the Q_i.
inline DelPezzoSets del_pezzo_sets_from_table(int r) {
  check_kit_rank(r);
  return {enumerate_roots(r), instantiate_all(one_set_patterns(), r), instantiate_all(two_set_patterns(), r)};
}

/// Sets built from the intersection numbers alone.
inline DelPezzoSets del_pezzo_sets_from_form(int r) {
  check_kit_rank(r);
  return {bounded_search(r, 0, -2), bounded_search(r, 1, -1), bounded_search(r, 2, 0)};
}

/// Table sets, checked once against the intersection characterization.
inline const DelPezzoSets& del_pezzo_sets(int r) {
  check_kit_rank(r);
  static std::array<std::once_flag, kMaxRank + 1> flags;
  static std::array<std::unique_ptr<DelPezzoSets>, kMaxRank + 1> cache;
  std::call_once(flags[r], [r] {
    auto t = del_pezzo_sets_from_table(r);
    auto f = del_pezzo_sets_from_form(r);
    if (t.F != f.F || t.E != f.E || t.G != f.G)
      throw std::logic_error("coefficient tables disagree with the intersection characterization");
    cache[r] = std::make_unique<DelPezzoSets>(std::move(t));
  });
  return *cache[r];
}

/// Literal lists for the geometrically ruled lattices P(0), P(1), P(2).
inline DelPezzoSets ruled_sets(int n) {
  using V = PicardVector;
  switch (n) {
    case 0: return {{V::ruled(0, 1, -1), V::ruled(0, -1, 1)}, {}, {V::ruled(0, 1, 0)}};
    case 1: return {{}, {V::ruled(1, 1, -1)}, {V::ruled(1, 0, 1)}};
    case 2: return {{V::ruled(2, 1, -2), V::ruled(2, -1, 2)}, {}, {V::ruled(2, 1, -1)}};
    default: throw Error(ErrorKind::RankOutOfRange, "ruled case must be P(0), P(1) or P(2)");
  }
}

/// Picard lattice of a weak Del Pezzo surface whose effective -2 classes are generated by a label.
struct SurfaceLattice {
  C1Label label;

  int rank() const { return label.rank; }
  int degree() const { return 9 - label.rank; }
};

inline SurfaceLattice make_surface_lattice(const C1Label& label) {
  dynkin_type(label.roots());  // basis precondition
  return {label};
}

/// Positive roots of the subsystem generated by the label.
inline std::vector<PicardVector> effective_zero_set(const SurfaceLattice& X) {
  const auto& rs = root_system(X.rank());
  auto idx = root_indices(rs, X.label.roots());
  if (idx.empty()) return {};
  RootMask S = rs.closure(idx) & rs.positives();
  return rs.vectors(S);
}

namespace detail {

inline std::vector<PicardVector> nonnegative_on(const std::vector<PicardVector>& set,
                                                const std::vector<PicardVector>& roots) {
  std::vector<PicardVector> out;
  for (const auto& c : set) {
    bool ok = true;
    for (const auto& f : roots)
      if (intersect(c, f) < 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// E_{>=0}: classes of E meeting every effective -2 class nonnegatively.
inline std::vector<PicardVector> indecomposable_one_set(const SurfaceLattice& X) {
  return detail::nonnegative_on(del_pezzo_sets(X.rank()).E, effective_zero_set(X));
}

/// G_irr: classes of G meeting every effective -2 class nonnegatively.
inline std::vector<PicardVector> irreducible_two_set(const SurfaceLattice& X) {
  return detail::nonnegative_on(del_pezzo_sets(X.rank()).G, effective_zero_set(X));
}

inline bool cremona_equivalent(const SurfaceLattice& a, const SurfaceLattice& b) {
  return equivalent(a.label, b.label);
}

}  // namespace delpezzo
