#include <gtest/gtest.h>

#include <random>

#include "delpezzo/linear_series.hpp"
#include "delpezzo/surface_builder.hpp"

using namespace delpezzo;

namespace {

Polynomial xyz(const std::string& s) { return parse_polynomial(s, projective_names()); }

LinearSeries series(int d, const std::vector<std::string>& gens) {
  LinearSeries s{d, {}};
  for (const auto& g : gens) s.generators.push_back(xyz(g));
  return s;
}

// p = (0:1:1) with an infinitely near point in chart Ct at (0,0)
BasePointTrees tangent_tree() {
  BasePoint child;
  child.a = 0;
  child.b = 0;
  BasePoint p;
  p.a = 0;
  p.b = 1;
  p.t.push_back(child);
  BasePointTrees t;
  t.z.push_back(p);
  normalize(t);
  return t;
}

}  // namespace

TEST(LinearSeries, MonomialOrder) {
  std::vector<std::string> got;
  for (const auto& m : monomials(2)) got.push_back(m.to_string(projective_names()));
  EXPECT_EQ(got, (std::vector<std::string>{"z^2", "y*z", "y^2", "x*z", "x*y", "x^2"}));
  EXPECT_EQ(monomials(3).size(), 10u);
}

TEST(LinearSeries, ConstructConicExample) {
  auto c = construct_linear_series(2, tangent_tree());
  RMatrix conditions = {{1, 1, 1, 0, 0, 0}, {0, 1, 2, 0, 0, 0}};
  EXPECT_EQ(c.conditions, conditions);
  EXPECT_TRUE(same_row_space(c.series, series(2, {"y^2 - 2*y*z + z^2", "x*z", "x*y", "x^2"})));
}

TEST(LinearSeries, BasePointsConicExample) {
  auto t = get_base_points(series(2, {"y^2 - 2*y*z + z^2", "x*z", "x*y", "x^2"}));
  ASSERT_EQ(t.z.size(), 1u);
  const auto& p = t.z[0];
  EXPECT_EQ(p.a, 0);
  EXPECT_EQ(p.b, 1);
  EXPECT_EQ(p.multiplicity, 1);
  ASSERT_EQ(p.t.size(), 1u);
  EXPECT_EQ(p.t[0].chart, Chart::Ct);
  EXPECT_EQ(p.t[0].multiplicity, 1);
  EXPECT_TRUE(p.t[0].t.empty() && p.t[0].s.empty());
  EXPECT_TRUE(p.s.empty());
  EXPECT_TRUE(genuine(t.y).empty());
  EXPECT_TRUE(genuine(t.x).empty());
  EXPECT_EQ(count_points(t.z), 2);
  EXPECT_TRUE(same_trees(t, tangent_tree()));
}

TEST(LinearSeries, ChartOverlap) {
  EXPECT_FALSE(chart_overlap(1, 1, Chart::Uz));
  EXPECT_TRUE(chart_overlap(0, 1, Chart::Uy));
  EXPECT_FALSE(chart_overlap(3, 0, Chart::Uy));
  EXPECT_FALSE(chart_overlap(0, 0, Chart::Ux));
  EXPECT_TRUE(chart_overlap(0, 2, Chart::Cs));
  EXPECT_FALSE(chart_overlap(0, 0, Chart::Cs));
  EXPECT_FALSE(chart_overlap(5, 0, Chart::Ct));
}

TEST(LinearSeries, Errors) {
  EXPECT_THROW(get_base_points(series(2, {"x^2 + y"})), Error);
  BasePointTrees t;
  for (int i = 0; i < 4; ++i) {
    BasePoint p;
    p.a = i;
    p.b = i * i;
    t.z.push_back(p);
  }
  try {
    construct_linear_series(1, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySeries);
  }
  try {
    get_base_points(series(2, {"x*y", "x*z"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InfiniteBaseLocus);
  }
}

TEST(LinearSeries, PointsAtInfinity) {
  auto t = get_base_points(series(2, {"x*z", "y*z", "z^2", "x*y"}));
  EXPECT_EQ(count_points(t.z), 0);
  EXPECT_EQ(count_points(t.y), 1);  // (1:0:0) seen in chart x=1 only if not in y=1
  EXPECT_EQ(count_points(t.y) + count_points(t.x), 2);
}

// series built from random point trees give back exactly those trees
TEST(LinearSeriesProperty, RoundTrip) {
  int checked = 0;
  for (unsigned seed = 1; seed <= 24; ++seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 3), count(1, 5), coin(0, 2);
    auto q = [&] {
      Rational x(num(rng), den(rng));
      x.canonicalize();
      return x;
    };
    PointConfiguration c;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
      ConfigPoint p;
      int kind = i ? coin(rng) : 0;
      if (kind == 0) {
        p.a = q();
        p.b = q();
      } else {
        p.parent = i - 1;
        p.chart = kind == 1 ? Chart::Ct : Chart::Cs;
        // keep clear of the previous exceptional curve
        const auto& up = c.points[i - 1];
        if (up.parent >= 0 && up.chart == Chart::Ct) p.chart = Chart::Ct;
        if (p.chart == Chart::Ct) p.a = q();
        if (up.parent >= 0 && up.chart == Chart::Cs && p.chart == Chart::Ct && p.a == 0) p.a = 1;
      }
      c.points.push_back(p);
    }
    bool distinct = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (c.points[i].parent < 0 && c.points[j].parent < 0 && c.points[i].a == c.points[j].a &&
            c.points[i].b == c.points[j].b)
          distinct = false;
    if (!distinct) continue;
    auto trees = configuration_trees(c);
    int degree = n <= 3 ? 3 : 4;
    auto s = get_linear_series(degree, trees);
    EXPECT_EQ(static_cast<int>(s.generators.size()), (degree + 1) * (degree + 2) / 2 - n) << seed;
    auto back = get_base_points(s);
    EXPECT_TRUE(same_trees(back, trees)) << "seed " << seed;
    EXPECT_EQ(count_points(back.z) + count_points(back.y) + count_points(back.x), n) << seed;
    ++checked;
  }
  EXPECT_GE(checked, 20);
}
