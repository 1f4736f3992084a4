#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "delpezzo/root_classification.hpp"
#include "delpezzo/weyl_oracle.hpp"

using namespace delpezzo;

namespace {

// label for the image of the subsystem under a random product of simple reflections
C1Label random_image(const C1Label& L, std::mt19937& rng, int steps) {
  const auto& rs = root_system(L.rank);
  auto idx = root_indices(rs, L.roots());
  if (idx.empty()) return L;
  auto gens = rs.simple_roots(rs.all());
  RootMask m = rs.closure(idx);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int s = 0; s < steps; ++s) {
    RootMask n;
    int g = gens[pick(rng)];
    for (int x : rs.indices(m)) n.set(rs.reflect(g, x));
    m = n;
  }
  C1Label out;
  out.rank = L.rank;
  for (int b : rs.simple_roots(m)) out.elements.push_back(element_of(rs.root(b)));
  return out;
}

}  // namespace

TEST(Classification, CountsPerRank) {
  const std::map<int, int> expected = {{2, 2}, {3, 6}, {4, 7}, {5, 16}, {6, 21}, {7, 47}, {8, 77}};
  const auto& all = classify_all();
  EXPECT_EQ(all.size(), 176u);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].index, static_cast<int>(i) + 1);
  for (auto [r, n] : expected) EXPECT_EQ(static_cast<int>(classify(r).size()), n) << r;
}

TEST(Classification, DegreeFourTypes) {
  auto rows = classify(5);
  ASSERT_EQ(rows.size(), 16u);
  EXPECT_EQ(rows.front().index, 16);
  EXPECT_EQ(rows.back().index, 31);
  std::vector<std::string> types;
  for (const auto& e : rows) types.push_back(e.type);
  std::vector<std::string> expected = {"A0", "A1",  "2A1",   "2A1",    "A2",    "3A1", "A2+A1",  "A3",
                                       "A3", "4A1", "A2+2A1", "A3+A1", "A4",    "D4",  "A3+2A1", "D5"};
  std::sort(types.begin(), types.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(types, expected);
  EXPECT_EQ(rows[3].label.tokens(), "1123,45");
  EXPECT_EQ(rows[3].index, 19);
}

TEST(Classification, RankThreeSpecialCase) {
  auto a = parse_label("1123;3"), b = parse_label("23;3");
  EXPECT_EQ(class_of(a).type, "A1");
  EXPECT_EQ(class_of(b).type, "A1");
  EXPECT_FALSE(equivalent(a, b));
  EXPECT_NE(class_of(a).index, class_of(b).index);
}

TEST(Classification, EveryRowIsItsOwnClass) {
  for (const auto& e : classify_all()) EXPECT_EQ(class_of(e.label).index, e.index) << e.label.text();
}

TEST(Oracle, BijectionWithClassification) {
  for (int r = 2; r <= kOracleRankCap; ++r) {
    auto part = orbit_classify(r);
    EXPECT_TRUE(agrees_with_classification(part)) << r;
    EXPECT_EQ(part.orbits.size(), classify(r).size());
  }
  EXPECT_THROW(orbit_classify(6), Error);
}

TEST(Oracle, GroupOrders) {
  const std::size_t orders[] = {2, 12, 120, 1920};
  for (int r = 2; r <= 5; ++r) EXPECT_EQ(orbit_classify(r).group_order, orders[r - 2]);
}

// reflexive, symmetric, transitive, and constant on Weyl orbits
TEST(ClassificationProperty, EquivalenceLaws) {
  std::mt19937 rng(7);
  for (int r = 2; r <= 5; ++r) {
    std::vector<std::pair<int, C1Label>> sample;
    for (const auto& e : classify(r))
      for (int k = 0; k < 4; ++k) sample.emplace_back(e.index, random_image(e.label, rng, 1 + 3 * k));
    for (const auto& [i, a] : sample) {
      EXPECT_TRUE(equivalent(a, a));
      EXPECT_EQ(class_of(a).index, i) << a.text();
    }
    for (const auto& [i, a] : sample)
      for (const auto& [j, b] : sample) {
        bool ab = equivalent(a, b);
        EXPECT_EQ(ab, equivalent(b, a));
        EXPECT_EQ(ab, i == j) << a.text() << " " << b.text();
      }
    std::uniform_int_distribution<std::size_t> pick(0, sample.size() - 1);
    for (int t = 0; t < 500; ++t) {
      const auto& a = sample[pick(rng)].second;
      const auto& b = sample[pick(rng)].second;
      const auto& c = sample[pick(rng)].second;
      if (equivalent(a, b) && equivalent(b, c)) EXPECT_TRUE(equivalent(a, c));
    }
  }
}
