#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "delpezzo/error.hpp"
#include "delpezzo/linalg.hpp"
#include "delpezzo/polynomial.hpp"

namespace delpezzo {

enum class Chart { Ux, Uy, Uz, Cs, Ct };

inline std::string chart_name(Chart c) {
  switch (c) {
    case Chart::Ux: return "Ux";
    case Chart::Uy: return "Uy";
    case Chart::Uz: return "Uz";
    case Chart::Cs: return "Cs";
    case Chart::Ct: return "Ct";
  }
  return "?";
}

inline Chart parse_chart(const std::string& s) {
  for (Chart c : {Chart::Ux, Chart::Uy, Chart::Uz, Chart::Cs, Chart::Ct})
    if (chart_name(c) == s) return c;
  throw Error(ErrorKind::Parse, "unknown chart '" + s + "'");
}

/// One (possibly infinitely near) base point with its blow-up subtrees.
struct BasePoint {
  Chart chart = Chart::Uz;
  int depth = 0;
  Rational a = 0, b = 0;
  int multiplicity = 1;  // -1 marks a point already seen in an earlier chart
  std::vector<Polynomial> series;
  std::vector<BasePoint> t;  // chart Ct of the blow-up
  std::vector<BasePoint> s;  // chart Cs of the blow-up

  bool overlap() const { return multiplicity < 0; }
};

using BasePointForest = std::vector<BasePoint>;

/// Forests for the three affine charts z=1, y=1, x=1.
struct BasePointTrees {
  BasePointForest z, y, x;
};

struct LinearSeries {
  int degree = 0;
  std::vector<Polynomial> generators;  // homogeneous in x, y, z
};

/// Monomials of the given degree ordered by the exponents of x, then y.
inline std::vector<Polynomial> monomials(int degree) {
  std::vector<Polynomial> out;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) out.push_back(Polynomial::monomial(3, {a, b, degree - a - b}));
  return out;
}

/// Restriction of a homogeneous polynomial to an affine chart, in variables (u, v).
inline Polynomial dehomogenize(const Polynomial& g, Chart c) {
  auto u = Polynomial::variable(2, 0), v = Polynomial::variable(2, 1), one = Polynomial::constant(2, 1);
  switch (c) {
    case Chart::Uz: return g.substitute({u, v, one}, 2);
    case Chart::Uy: return g.substitute({u, one, v}, 2);
    case Chart::Ux: return g.substitute({one, u, v}, 2);
    default: throw std::logic_error("not a plane chart");
  }
}

/// Whether a solution was already found in an earlier chart.
inline bool chart_overlap(const Rational& a, const Rational& b, Chart c) {
  switch (c) {
    case Chart::Uz: return false;
    case Chart::Uy: return b != 0;  // (x, z): z != 0 lies in Uz
    case Chart::Ux: return a != 0 || b != 0;  // (y, z)
    case Chart::Ct: return false;
    case Chart::Cs: return b != 0;  // s != 0 lies in Ct
  }
  return false;
}

namespace detail {

inline std::vector<Polynomial> nonzero(std::vector<Polynomial> g) {
  std::erase_if(g, [](const Polynomial& p) { return p.is_zero(); });
  return g;
}

inline int series_order(const std::vector<Polynomial>& g) {
  int m = -1;
  for (const auto& p : g) {
    int o = p.order();
    if (o >= 0 && (m < 0 || o < m)) m = o;
  }
  return m;
}

}  // namespace detail

inline BasePointForest get_base_points_affine(const std::vector<Polynomial>& gens, int depth, Chart chart) {
  if (depth > 64) throw std::logic_error("base point recursion too deep");
  auto g = detail::nonzero(gens);
  Restriction r = chart == Chart::Ct ? Restriction::VZero : chart == Chart::Cs ? Restriction::UZero : Restriction::None;
  BasePointForest out;
  for (const auto& [a, b] : zero_set(g, r)) {
    BasePoint p;
    p.chart = chart;
    p.depth = depth;
    p.a = a;
    p.b = b;
    p.series = g;
    if (chart_overlap(a, b, chart)) {
      p.multiplicity = -1;
      out.push_back(std::move(p));
      continue;
    }
    std::vector<Polynomial> moved;
    for (const auto& f : g) moved.push_back(translate(f, a, b));
    int mul = detail::series_order(moved);
    p.multiplicity = mul;
    std::vector<Polynomial> gt, gs;
    for (const auto& f : moved) {
      gt.push_back(polynomial_quotient(pullback_t(f), 1, mul));
      gs.push_back(polynomial_quotient(pullback_s(f), 0, mul));
    }
    p.t = get_base_points_affine(gt, depth + 1, Chart::Ct);
    p.s = get_base_points_affine(gs, depth + 1, Chart::Cs);
    out.push_back(std::move(p));
  }
  return out;
}

inline BasePointTrees get_base_points(const LinearSeries& series) {
  for (const auto& g : series.generators)
    if (!g.is_homogeneous()) throw Error(ErrorKind::Parse, "generators must be homogeneous");
  auto chart = [&](Chart c) {
    std::vector<Polynomial> g;
    for (const auto& p : series.generators) g.push_back(dehomogenize(p, c));
    return get_base_points_affine(g, 0, c);
  };
  BasePointTrees t;
  t.z = chart(Chart::Uz);
  t.y = chart(Chart::Uy);
  t.x = chart(Chart::Ux);
  return t;
}

// ---- construction ----

namespace detail {

inline void condition_rows(const BasePointForest& B, const std::vector<Polynomial>& g,
                           std::vector<std::vector<Polynomial>>& rows) {
  for (const auto& p : B) {
    if (p.multiplicity < 0) throw Error(ErrorKind::Parse, "prescribed multiplicities must be nonnegative");
    std::vector<Polynomial> f;
    for (const auto& q : g) f.push_back(translate(q, p.a, p.b));
    for (int a = 0; a < p.multiplicity; ++a)
      for (int b = 0; a + b < p.multiplicity; ++b) {
        std::vector<Polynomial> row;
        for (const auto& q : f) row.push_back(q.derivative(0, a).derivative(1, b));
        rows.push_back(std::move(row));
      }
    std::vector<Polynomial> at, bt;
    for (const auto& q : f) {
      at.push_back(truncated_quotient(pullback_t(q), 1, p.multiplicity));
      bt.push_back(truncated_quotient(pullback_s(q), 0, p.multiplicity));
    }
    condition_rows(p.t, at, rows);
    condition_rows(p.s, bt, rows);
  }
}

}  // namespace detail

struct SeriesConstruction {
  LinearSeries series;
  RMatrix conditions;  // one row per condition, one column per monomial
  RMatrix kernel;      // reduced row echelon basis of the solution space
};

inline SeriesConstruction construct_linear_series(int degree, const BasePointTrees& trees) {
  if (degree < 0) throw Error(ErrorKind::Parse, "degree must be nonnegative");
  auto mons = monomials(degree);
  std::vector<std::vector<Polynomial>> rows;
  for (auto [forest, c] : {std::pair{&trees.z, Chart::Uz}, {&trees.y, Chart::Uy}, {&trees.x, Chart::Ux}}) {
    std::vector<Polynomial> g;
    for (const auto& m : mons) g.push_back(dehomogenize(m, c));
    detail::condition_rows(*forest, g, rows);
  }
  SeriesConstruction out;
  int n = static_cast<int>(mons.size());
  for (const auto& row : rows) {
    std::vector<Rational> r;
    for (const auto& p : row) r.push_back(p.coeff({0, 0, 0}));
    out.conditions.push_back(std::move(r));
  }
  out.kernel = kernel(out.conditions, n);
  if (out.kernel.empty()) throw Error(ErrorKind::EmptySeries, "no series of this degree satisfies the conditions");
  out.series.degree = degree;
  for (const auto& k : out.kernel) {
    Polynomial g(3);
    for (int i = 0; i < n; ++i)
      if (k[i] != 0) g += k[i] * mons[i];
    out.series.generators.push_back(std::move(g));
  }
  return out;
}

inline LinearSeries get_linear_series(int degree, const BasePointTrees& trees) {
  return construct_linear_series(degree, trees).series;
}

/// Coefficient matrix of the generators over the monomial basis.
inline RMatrix coefficient_matrix(const LinearSeries& s) {
  auto mons = monomials(s.degree);
  RMatrix m;
  for (const auto& g : s.generators) {
    std::vector<Rational> row;
    for (const auto& mo : mons) row.push_back(g.coeff(mo.terms().begin()->first));
    m.push_back(std::move(row));
  }
  return m;
}

/// Same linear span over the rationals.
inline bool same_row_space(const LinearSeries& a, const LinearSeries& b) {
  if (a.degree != b.degree) return false;
  auto ma = coefficient_matrix(a), mb = coefficient_matrix(b);
  rref(ma);
  rref(mb);
  return ma == mb;
}

/// Forest without overlap records and stored series, for comparisons.
inline BasePointForest genuine(const BasePointForest& f) {
  BasePointForest out;
  for (const auto& p : f) {
    if (p.overlap()) continue;
    BasePoint q = p;
    q.series.clear();
    q.t = genuine(p.t);
    q.s = genuine(p.s);
    out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end(), [](const BasePoint& x, const BasePoint& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  return out;
}

/// Structural equality of two forests (charts, depths, solutions, multiplicities).
inline bool same_forest(const BasePointForest& a, const BasePointForest& b) {
  auto x = genuine(a), y = genuine(b);
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].a != y[i].a || x[i].b != y[i].b || x[i].multiplicity != y[i].multiplicity) return false;
    if (!same_forest(x[i].t, y[i].t) || !same_forest(x[i].s, y[i].s)) return false;
  }
  return true;
}

/// Fill chart and depth fields of a prescribed tree.
inline void normalize_forest(BasePointForest& f, Chart chart, int depth = 0) {
  for (auto& p : f) {
    p.chart = chart;
    p.depth = depth;
    normalize_forest(p.t, Chart::Ct, depth + 1);
    normalize_forest(p.s, Chart::Cs, depth + 1);
  }
}

inline void normalize(BasePointTrees& t) {
  normalize_forest(t.z, Chart::Uz);
  normalize_forest(t.y, Chart::Uy);
  normalize_forest(t.x, Chart::Ux);
}

inline bool same_trees(const BasePointTrees& a, const BasePointTrees& b) {
  return same_forest(a.z, b.z) && same_forest(a.y, b.y) && same_forest(a.x, b.x);
}

inline int count_points(const BasePointForest& f) {
  int n = 0;
  for (const auto& p : genuine(f)) n += 1 + count_points(p.t) + count_points(p.s);
  return n;
}

}  // namespace delpezzo
