#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "delpezzo/root_classification.hpp"
#include "delpezzo/root_system.hpp"

namespace delpezzo {

inline constexpr int kOracleRankCap = 5;

/// Integral matrix acting on coefficient vectors (columns are images of H, Q1, ...).
struct WeylElement {
  int dim = 0;
  std::vector<int> m;  // row major

  int at(int i, int j) const { return m[i * dim + j]; }

  PicardVector apply(const PicardVector& v) const {
    auto out = PicardVector::zero(v.rank());
    for (int i = 0; i < dim; ++i) {
      int s = 0;
      for (int j = 0; j < dim; ++j) s += at(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
    WeylElement c{a.dim, std::vector<int>(a.dim * a.dim, 0)};
    for (int i = 0; i < a.dim; ++i)
      for (int k = 0; k < a.dim; ++k) {
        int x = a.at(i, k);
        if (!x) continue;
        for (int j = 0; j < a.dim; ++j) c.m[i * a.dim + j] += x * b.at(k, j);
      }
    return c;
  }

  friend auto operator<=>(const WeylElement&, const WeylElement&) = default;
};

inline WeylElement reflection_matrix(const PicardVector& u) {
  int dim = u.size();
  WeylElement w{dim, std::vector<int>(dim * dim, 0)};
  for (int j = 0; j < dim; ++j) {
    auto e = PicardVector::zero(u.rank());
    e[j] = 1;
    auto img = reflect(u, e);
    for (int i = 0; i < dim; ++i) w.m[i * dim + j] = img[i];
  }
  return w;
}

inline void check_oracle_rank(int r) {
  check_kit_rank(r);
  if (r > kOracleRankCap) throw Error(ErrorKind::OracleRankCap, "oracle rank cap exceeded");
}

/// W(R) as the closure of the simple reflections.
inline std::vector<WeylElement> weyl_group(int r) {
  check_oracle_rank(r);
  const auto& rs = root_system(r);
  std::vector<WeylElement> gens;
  for (int s : rs.simple_roots(rs.all())) gens.push_back(reflection_matrix(rs.root(s)));
  int dim = r + 1;
  WeylElement id{dim, std::vector<int>(dim * dim, 0)};
  for (int i = 0; i < dim; ++i) id.m[i * dim + i] = 1;
  std::set<WeylElement> seen{id};
  std::vector<WeylElement> frontier{id};
  while (!frontier.empty()) {
    std::vector<WeylElement> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        auto x = g * w;
        if (seen.insert(x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

struct Orbit {
  int id = 0;
  std::string type;
  std::vector<int> basis;  // simple roots of the representative
  std::vector<RootMask> members;
};

struct OrbitPartition {
  int rank = 0;
  std::size_t group_order = 0;
  std::vector<Orbit> orbits;
  std::map<std::string, int> counts_by_type;

  /// Orbit id of a subsystem given as a root mask, or -1.
  int orbit_of(const RootMask& m) const {
    for (const auto& o : orbits)
      for (const auto& x : o.members)
        if (x == m) return o.id;
    return -1;
  }
};

/// Every subsystem generated by a simple basis of positive roots, grouped into W-orbits.
inline OrbitPartition orbit_classify(int r) {
  check_oracle_rank(r);
  const auto& rs = root_system(r);
  auto group = weyl_group(r);
  // each group element as a permutation of root indices
  std::vector<std::vector<int>> perms;
  for (const auto& w : group) {
    std::vector<int> p(rs.size());
    for (int i = 0; i < rs.size(); ++i) p[i] = rs.index_of(w.apply(rs.root(i)));
    perms.push_back(std::move(p));
  }
  std::vector<int> pos;
  for (int i = 0; i < rs.size(); ++i)
    if (rs.positive(i)) pos.push_back(i);

  std::set<std::string> seen_keys;
  std::vector<RootMask> subsystems;
  std::vector<int> chosen;
  std::vector<std::vector<std::int64_t>> rows;
  auto key_of = [](const RootMask& m) { return m.to_string(); };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    RootMask m = chosen.empty() ? RootMask{} : rs.closure(chosen);
    if (seen_keys.insert(key_of(m)).second) subsystems.push_back(m);
    for (std::size_t i = start; i < pos.size(); ++i) {
      bool ok = true;
      for (int c : chosen) {
        int g = rs.dot(c, pos[i]);
        if (g != 0 && g != 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const auto& v = rs.root(pos[i]);
      rows.emplace_back(v.coeffs().begin(), v.coeffs().end());
      if (integer_rank(rows) == static_cast<int>(rows.size())) {
        chosen.push_back(pos[i]);
        self(self, i + 1);
        chosen.pop_back();
      }
      rows.pop_back();
    }
  };
  rec(rec, 0);

  OrbitPartition part;
  part.rank = r;
  part.group_order = group.size();
  std::set<std::string> assigned;
  std::vector<Orbit> orbits;
  for (const auto& s : subsystems) {
    if (assigned.count(key_of(s))) continue;
    Orbit o;
    std::set<std::string> members;
    for (const auto& p : perms) {
      RootMask img;
      for (int i = 0; i < rs.size(); ++i)
        if (s.test(i)) img.set(p[i]);
      if (members.insert(key_of(img)).second) o.members.push_back(img);
    }
    for (const auto& k : members) assigned.insert(k);
    o.basis = rs.simple_roots(s);
    o.type = rs.type_of_basis(o.basis);
    orbits.push_back(std::move(o));
  }
  std::stable_sort(orbits.begin(), orbits.end(), [](const Orbit& a, const Orbit& b) {
    if (a.basis.size() != b.basis.size()) return a.basis.size() < b.basis.size();
    auto ka = detail::component_key(a.type), kb = detail::component_key(b.type);
    if (ka != kb) return ka < kb;
    return a.members.size() < b.members.size();
  });
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    orbits[i].id = static_cast<int>(i);
    ++part.counts_by_type[orbits[i].type];
  }
  part.orbits = std::move(orbits);
  return part;
}

/// Orbit id of each classification row, in row order; empty entries mark rows with no orbit.
inline std::vector<int> orbit_ids(const OrbitPartition& part, const std::vector<ClassificationEntry>& rows) {
  const auto& rs = root_system(part.rank);
  std::vector<int> ids;
  for (const auto& e : rows) {
    auto idx = root_indices(rs, e.label.roots());
    ids.push_back(part.orbit_of(idx.empty() ? RootMask{} : rs.closure(idx)));
  }
  return ids;
}

/// Classification rows and Weyl orbits correspond one to one.
inline bool agrees_with_classification(const OrbitPartition& part) {
  auto ids = orbit_ids(part, classify(part.rank));
  std::set<int> distinct(ids.begin(), ids.end());
  return !distinct.count(-1) && distinct.size() == ids.size() && ids.size() == part.orbits.size();
}

}  // namespace delpezzo
