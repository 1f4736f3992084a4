#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "delpezzo/delpezzo_sets.hpp"
#include "delpezzo/linear_series.hpp"
#include "delpezzo/root_classification.hpp"

namespace delpezzo {

/// A point of the plane (chart Uz) or a point on the exceptional curve over its parent.
struct ConfigPoint {
  int parent = -1;          // 0-based index, -1 for a plane point
  Chart chart = Chart::Uz;  // Ct: (t, 0), Cs: (0, s)
  Rational a = 0, b = 0;
};

struct PointConfiguration {
  std::vector<ConfigPoint> points;

  int rank() const { return static_cast<int>(points.size()); }

  bool descends(int i, int j) const {
    for (int p = points[j].parent; p >= 0; p = points[p].parent)
      if (p == i) return true;
    return false;
  }
};

namespace detail {

inline BasePoint tree_node(const PointConfiguration& c, int i, const std::vector<int>& mult,
                           const std::vector<bool>& keep) {
  BasePoint p;
  p.chart = c.points[i].chart;
  p.a = c.points[i].a;
  p.b = c.points[i].b;
  p.multiplicity = mult[i];
  for (int j = 0; j < c.rank(); ++j) {
    if (c.points[j].parent != i || !keep[j]) continue;
    auto child = tree_node(c, j, mult, keep);
    (c.points[j].chart == Chart::Cs ? p.s : p.t).push_back(std::move(child));
  }
  return p;
}

}  // namespace detail

/// Base point trees carrying the given multiplicities; points with nothing prescribed are dropped.
inline BasePointTrees configuration_trees(const PointConfiguration& c, const std::vector<int>& mult) {
  int n = c.rank();
  std::vector<bool> keep(n, false);
  for (int j = 0; j < n; ++j)
    if (mult[j] > 0)
      for (int p = j; p >= 0; p = c.points[p].parent) keep[p] = true;
  BasePointTrees t;
  for (int i = 0; i < n; ++i)
    if (c.points[i].parent < 0 && keep[i]) t.z.push_back(detail::tree_node(c, i, mult, keep));
  normalize(t);
  return t;
}

inline BasePointTrees configuration_trees(const PointConfiguration& c) {
  return configuration_trees(c, std::vector<int>(c.rank(), 1));
}

/// Multiplicities m_i of a class dH - sum m_i Q_i.
inline std::vector<int> class_multiplicities(const PicardVector& v) {
  std::vector<int> m;
  for (int i = 1; i <= v.rank(); ++i) m.push_back(-v[i]);
  return m;
}

inline int series_dimension(int degree, const BasePointTrees& t) {
  try {
    return static_cast<int>(construct_linear_series(degree, t).kernel.size());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EmptySeries) return 0;
    throw;
  }
}

/// Whether a root class is effective on the blow-up of the configuration.
inline bool is_effective(const PointConfiguration& c, const PicardVector& root) {
  int d = root[0];
  if (d < 0) return false;
  auto m = class_multiplicities(root);
  if (d == 0) {
    int a = -1, b = -1;
    for (int i = 0; i < c.rank(); ++i) {
      if (m[i] == -1) a = i;
      if (m[i] == 1) b = i;
    }
    return a >= 0 && b >= 0 && c.descends(a, b);
  }
  if (std::any_of(m.begin(), m.end(), [](int x) { return x < 0; })) return false;
  return series_dimension(d, configuration_trees(c, m)) > 0;
}

inline std::vector<PicardVector> effective_roots(const PointConfiguration& c) {
  std::vector<PicardVector> out;
  const auto& rs = root_system(c.rank());
  for (int i = 0; i < rs.size(); ++i)
    if (rs.positive(i) && is_effective(c, rs.root(i))) out.push_back(rs.root(i));
  return out;
}

struct BuiltSurface {
  SurfaceLattice lattice;  // label realized by the configuration
  C1Label requested;       // equivalent to lattice.label
  PointConfiguration configuration;
  BasePointTrees trees;
  LinearSeries parametrization;  // cubics through the points
  int attempts = 1;
};

struct VerificationReport {
  std::vector<PicardVector> effective, expected, missing, unexpected;
  bool equivalent = false;

  bool ok() const { return missing.empty() && unexpected.empty(); }
};

/// Compare the effective -2 classes of the configuration with the roots predicted by the label.
inline VerificationReport verify_configuration(const C1Label& label, const PointConfiguration& c) {
  VerificationReport r;
  r.effective = effective_roots(c);
  r.expected = effective_zero_set(make_surface_lattice(label));
  sort_kit(r.effective);
  sort_kit(r.expected);
  std::set_difference(r.expected.begin(), r.expected.end(), r.effective.begin(), r.effective.end(),
                      std::back_inserter(r.missing), KitLess{});
  std::set_difference(r.effective.begin(), r.effective.end(), r.expected.begin(), r.expected.end(),
                      std::back_inserter(r.unexpected), KitLess{});
  const auto& rs = root_system(label.rank);
  auto idx = root_indices(rs, r.effective);
  auto basis = idx.empty() ? std::vector<int>{} : rs.simple_roots(rs.closure(idx));
  r.equivalent = basis_invariant(rs, basis) == invariant(label);
  return r;
}

inline VerificationReport verify_c1_object(const BuiltSurface& s) {
  auto r = verify_configuration(s.lattice.label, s.configuration);
  if (r.equivalent && s.requested.rank == s.lattice.label.rank) r.equivalent = equivalent(s.requested, s.lattice.label);
  return r;
}

/// Number of conic families, one per class of G meeting every -2 curve nonnegatively.
inline int conic_family_count(const BuiltSurface& s) {
  return static_cast<int>(irreducible_two_set(s.lattice).size());
}

/// Surface for an explicitly given configuration; no genericity check.
inline BuiltSurface make_surface(const C1Label& label, const PointConfiguration& c) {
  if (c.rank() != label.rank) throw Error(ErrorKind::Parse, "configuration has the wrong number of points");
  BuiltSurface s{make_surface_lattice(label), label, c, configuration_trees(c), {}, 1};
  s.parametrization = get_linear_series(3, s.trees);
  return s;
}

namespace detail {

struct PlacementFailure {};

/// Points of the label's difference tokens and the classes of its line, conic and cubic tokens.
struct PlacementProblem {
  int rank = 0;
  std::vector<int> parent;
  std::vector<PicardVector> curves;

  explicit PlacementProblem(const C1Label& label) : rank(label.rank), parent(label.rank, -1) {
    for (const auto& e : label.elements) {
      if (e.kind != LabelKind::Difference) {
        curves.push_back(phi(e, rank));
        continue;
      }
      int a = e.idx[0] - 1, b = e.idx[1] - 1;
      if (a >= b) throw Error(ErrorKind::InvalidLabel, "difference tokens must have increasing indices");
      parent[b] = a;
    }
  }

  // curves whose last unplaced point is i
  std::vector<int> closing(int i, const std::vector<bool>& placed) const {
    std::vector<int> out;
    for (int c = 0; c < static_cast<int>(curves.size()); ++c) {
      if (curves[c][i + 1] == 0) continue;
      bool last = true;
      for (int j = 0; j < rank; ++j)
        if (j != i && curves[c][j + 1] != 0 && !placed[j]) last = false;
      if (last) out.push_back(c);
    }
    return out;
  }

  /// Placement orders in which no point carries more conditions than its degrees of freedom.
  std::vector<std::vector<int>> orders(std::size_t limit = 12, std::size_t budget = 200000) const {
    std::vector<std::pair<int, std::vector<int>>> found;
    std::vector<int> order;
    std::vector<bool> placed(rank, false);
    std::size_t visited = 0;
    auto dfs = [&](auto&& self, int cost) -> void {
      if (found.size() >= 4 * limit || ++visited > budget) return;
      if (static_cast<int>(order.size()) == rank) {
        found.emplace_back(cost, order);
        return;
      }
      for (int i = 0; i < rank; ++i) {
        if (placed[i] || (parent[i] >= 0 && !placed[parent[i]])) continue;
        auto cl = closing(i, placed);
        int dof = parent[i] < 0 ? 2 : 1;
        if (static_cast<int>(cl.size()) > dof) continue;
        // a curve must not close at one of its singular points
        if (std::any_of(cl.begin(), cl.end(), [&](int c) { return curves[c][i + 1] < -1; })) continue;
        // two curves other than a pair of lines may meet outside the field
        int extra = cl.size() == 2 && (curves[cl[0]][0] > 1 || curves[cl[1]][0] > 1) ? 1 : 0;
        placed[i] = true;
        order.push_back(i);
        self(self, cost + extra);
        order.pop_back();
        placed[i] = false;
      }
    };
    dfs(dfs, 0);
    std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::vector<int>> out;
    for (std::size_t k = 0; k < found.size() && k < limit; ++k) out.push_back(found[k].second);
    return out;
  }
};

class Placer {
 public:
  Placer(const PlacementProblem& problem, std::uint64_t seed, int attempt)
      : pb_(problem), placed_(problem.rank, false) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    rng_.seed(seq);
    c_.points.resize(pb_.rank);
    for (int i = 0; i < pb_.rank; ++i) c_.points[i].parent = pb_.parent[i];
  }

  PointConfiguration run(const std::vector<int>& order) {
    for (int i : order) {
      std::vector<PicardVector> cons;
      for (int k : pb_.closing(i, placed_)) cons.push_back(pb_.curves[k]);
      if (pb_.parent[i] < 0)
        place_plane(i, cons);
      else
        place_near(i, pb_.parent[i], cons);
      placed_[i] = true;
    }
    return c_;
  }

 private:
  Rational small() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 3);
    Rational q(num(rng_), den(rng_));
    q.canonicalize();
    return q;
  }

  std::vector<int> placed_multiplicities(const PicardVector& cls, int i) const {
    auto m = class_multiplicities(cls);
    for (int j = 0; j < pb_.rank; ++j)
      if (j == i || !placed_[j]) m[j] = 0;
    return m;
  }

  // unique curve of the constraint class through the points already placed
  Polynomial curve(const PicardVector& cls, int i) {
    auto t = configuration_trees(c_, placed_multiplicities(cls, i));
    SeriesConstruction s;
    try {
      s = construct_linear_series(cls[0], t);
    } catch (const Error&) {
      throw PlacementFailure{};
    }
    if (s.kernel.size() != 1) throw PlacementFailure{};
    return s.series.generators[0];
  }

  bool fresh(const Rational& a, const Rational& b) const {
    for (int j = 0; j < pb_.rank; ++j)
      if (placed_[j] && c_.points[j].parent < 0 && c_.points[j].a == a && c_.points[j].b == b) return false;
    return true;
  }

  void set_plane(int i, const Rational& a, const Rational& b) {
    if (!fresh(a, b)) throw PlacementFailure{};
    c_.points[i] = {-1, Chart::Uz, a, b};
  }

  void place_plane(int i, const std::vector<PicardVector>& cons) {
    if (cons.empty()) {
      for (int k = 0; k < 50; ++k) {
        Rational a = small(), b = small();
        if (fresh(a, b)) return set_plane(i, a, b);
      }
      throw PlacementFailure{};
    }
    std::vector<Polynomial> fs;
    for (const auto& cls : cons) fs.push_back(dehomogenize(curve(cls, i), Chart::Uz));
    if (fs.size() > 1) {
      std::vector<std::pair<Rational, Rational>> pts;
      try {
        pts = zero_set(fs);
      } catch (const Error&) {
        throw PlacementFailure{};
      }
      for (const auto& [a, b] : pts)
        if (fresh(a, b)) return set_plane(i, a, b);
      throw PlacementFailure{};
    }
    const auto& f = fs[0];
    if (cons[0][0] == 1) {
      Rational al = f.coeff({1, 0, 0}), be = f.coeff({0, 1, 0}), ga = f.coeff({0, 0, 0});
      for (int k = 0; k < 50; ++k) {
        Rational a, b;
        if (be != 0) {
          a = small();
          b = -(al * a + ga) / be;
        } else {
          a = -ga / al;
          b = small();
        }
        if (fresh(a, b)) return set_plane(i, a, b);
      }
      throw PlacementFailure{};
    }
    // conic or nodal cubic: lines through a plane point of highest multiplicity meet it once more
    auto m = placed_multiplicities(cons[0], i);
    int best = -1;
    for (int j = 0; j < pb_.rank; ++j)
      if (c_.points[j].parent < 0 && m[j] > 0 && (best < 0 || m[j] > m[best])) best = j;
    if (best < 0) throw PlacementFailure{};
    const auto P = c_.points[best];
    auto s = Polynomial::variable(2, 0);
    for (int k = 0; k < 50; ++k) {
      Rational slope = small();
      auto g = f.substitute({Polynomial::constant(2, P.a) + s, Polynomial::constant(2, P.b) + slope * s}, 2)
                   .restrict_to(0, {0, 0});
      trim(g);
      std::size_t low = 0;
      while (low < g.size() && g[low] == 0) ++low;
      if (low == g.size() || degree(g) - static_cast<int>(low) != 1) continue;
      Rational root = -g[low] / g[low + 1];
      if (root == 0) continue;
      Rational a = P.a + root, b = P.b + slope * root;
      if (fresh(a, b)) return set_plane(i, a, b);
    }
    throw PlacementFailure{};
  }

  // restrictions of a curve to the exceptional curve over point q, in the charts Ct and Cs
  std::pair<UPoly, UPoly> on_exceptional(const Polynomial& f, int q, const std::vector<int>& m) const {
    std::vector<int> path;
    for (int p = q; p >= 0; p = c_.points[p].parent) path.push_back(p);
    std::reverse(path.begin(), path.end());
    Polynomial g = f;
    for (std::size_t k = 0; k < path.size(); ++k) {
      int n = path[k];
      g = translate(g, c_.points[n].a, c_.points[n].b);
      if (k + 1 == path.size()) break;
      g = c_.points[path[k + 1]].chart == Chart::Cs ? truncated_quotient(pullback_s(g), 0, m[n])
                                                    : truncated_quotient(pullback_t(g), 1, m[n]);
    }
    auto ct = truncated_quotient(pullback_t(g), 1, m[q]).restrict_to(0, {0, 0});
    auto cs = truncated_quotient(pullback_s(g), 0, m[q]).restrict_to(1, {0, 0});
    trim(ct);
    trim(cs);
    return {ct, cs};
  }

  void place_near(int i, int q, const std::vector<PicardVector>& cons) {
    if (cons.empty()) {
      c_.points[i] = {q, Chart::Ct, small(), 0};
      return;
    }
    std::optional<std::vector<Rational>> ts;  // nullopt: unconstrained
    bool s0 = true;
    for (const auto& cls : cons) {
      auto [ct, cs] = on_exceptional(dehomogenize(curve(cls, i), Chart::Uz), q, placed_multiplicities(cls, i));
      if (!ct.empty()) {
        auto roots = rational_roots(ct);
        if (ts) std::erase_if(roots, [&](const Rational& x) { return std::find(ts->begin(), ts->end(), x) == ts->end(); });
        ts = roots;
      }
      if (!cs.empty() && cs[0] != 0) s0 = false;
    }
    if (ts && !ts->empty())
      c_.points[i] = {q, Chart::Ct, ts->front(), 0};
    else if (!ts)
      c_.points[i] = {q, Chart::Ct, small(), 0};
    else if (s0)
      c_.points[i] = {q, Chart::Cs, 0, 0};
    else
      throw PlacementFailure{};
  }

  const PlacementProblem& pb_;
  std::vector<bool> placed_;
  std::mt19937_64 rng_;
  PointConfiguration c_;
};

}  // namespace detail

/// The label itself if some placement order exists, else equivalent labels found by simple reflections.
inline std::vector<C1Label> placeable_labels(const C1Label& label, std::size_t count = 4, std::size_t budget = 20000) {
  auto feasible = [](const C1Label& L) { return !detail::PlacementProblem(L).orders(1, 5000).empty(); };
  if (feasible(label)) return {label};
  const auto& rs = root_system(label.rank);
  auto idx = root_indices(rs, label.roots());
  if (idx.empty()) return {};
  auto gens = rs.simple_roots(rs.all());
  RootMask start = rs.closure(idx);
  std::unordered_set<RootMask> seen{start};
  std::deque<RootMask> queue{start};
  std::vector<C1Label> out;
  while (!queue.empty() && out.size() < count && seen.size() < budget) {
    RootMask m = queue.front();
    queue.pop_front();
    for (int g : gens) {
      RootMask n;
      for (int x : rs.indices(m)) n.set(rs.reflect(g, x));
      if (!seen.insert(n).second) continue;
      queue.push_back(n);
      C1Label L;
      L.rank = label.rank;
      for (int b : rs.simple_roots(n)) L.elements.push_back(element_of(rs.root(b)));
      if (feasible(L)) out.push_back(std::move(L));
    }
  }
  return out;
}

/// Seeded random configuration realizing a geometric label, or an equivalent one; retries on degenerate draws.
inline BuiltSurface build_surface(const C1Label& label, std::uint64_t seed, int max_retries = 20) {
  if (!label.geometric()) throw Error(ErrorKind::InvalidLabel, "label must be geometric");
  make_surface_lattice(label);
  std::vector<std::pair<C1Label, std::vector<std::vector<int>>>> plans;
  for (auto& L : placeable_labels(label)) {
    auto orders = detail::PlacementProblem(L).orders();
    plans.emplace_back(std::move(L), std::move(orders));
  }
  if (plans.empty()) throw Error(ErrorKind::Unsatisfiable, "constraints unsatisfiable over field");
  bool placed = false;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    const auto& [L, orders] = plans[attempt % plans.size()];
    detail::PlacementProblem problem(L);
    PointConfiguration c;
    try {
      c = detail::Placer(problem, seed, attempt).run(orders[(attempt / plans.size()) % orders.size()]);
    } catch (const detail::PlacementFailure&) {
      continue;
    }
    placed = true;
    if (!verify_configuration(L, c).ok()) continue;
    auto s = make_surface(L, c);
    s.requested = label;
    s.attempts = attempt + 1;
    return s;
  }
  if (!placed) throw Error(ErrorKind::Unsatisfiable, "constraints unsatisfiable over field");
  throw Error(ErrorKind::GenericityFailure, "genericity failure after " + std::to_string(max_retries) + " retries");
}

}  // namespace delpezzo
