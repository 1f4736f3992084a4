#include <gtest/gtest.h>

#include "delpezzo/real_structures.hpp"
#include "test_data.hpp"

using namespace delpezzo;

TEST(RealStructures, TableGolden) {
  auto rows = read_rows("real_table.txt");
  const auto& all = classify_real_all();
  ASSERT_EQ(rows.size(), 40u);
  ASSERT_EQ(all.size(), 40u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& e = all[i];
    const auto& g = rows[i];
    EXPECT_EQ(std::to_string(e.index), g[0]);
    EXPECT_EQ(std::to_string(e.rank), g[1]);
    EXPECT_EQ(std::to_string(e.c1_index), g[2]);
    EXPECT_EQ(e.type, g[3]);
    EXPECT_EQ(std::to_string(e.f0), g[4]);
    EXPECT_EQ(std::to_string(e.f1), g[5]);
    EXPECT_EQ(std::to_string(e.f2), g[6]);
  }
}

TEST(RealStructures, ImagesGolden) {
  auto rows = read_rows("real_images.txt");
  const auto& all = classify_real_all();
  ASSERT_EQ(rows.size(), all.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> got;
    for (const auto& v : all[i].images()) got.push_back(to_string(v));
    std::vector<std::string> want(rows[i].begin() + 1, rows[i].end());
    EXPECT_EQ(got, want) << "row " << rows[i][0];
  }
  EXPECT_EQ(to_string(real_entry(15).images().front()), "3H-2Q1-Q2-Q3-Q4-Q5");
  EXPECT_EQ(to_string(real_entry(40).images().front()), "17H-6Q1-6Q2-6Q3-6Q4-6Q5-6Q6-6Q7-6Q8");
}

TEST(RealStructures, RankFiltering) {
  auto five = classify_real(5);
  ASSERT_EQ(five.size(), 6u);
  EXPECT_EQ(five.front().index, 10);
  EXPECT_EQ(five.back().index, 15);
}

TEST(RealStructures, RejectedCandidate) {
  auto L = parse_label("1123,12,23,45;5");
  auto M = candidate_matrix(L);
  EXPECT_EQ(M[1][1], Rational(-4, 3));
  EXPECT_EQ(M[2][2], Rational(-4, 3));
  EXPECT_EQ(M[3][3], Rational(-4, 3));
  EXPECT_EQ(M[1][2], Rational(-1, 3));
  EXPECT_EQ(M[0][0], 2);
  EXPECT_EQ(M[4][5], 1);
  EXPECT_FALSE(is_integral(M));
  EXPECT_FALSE(candidate_structure(L).has_value());
}

TEST(RealStructures, ExtendToBasisExample) {
  auto V = extend_to_basis(parse_label("1123,12,23,45;5"));
  RMatrix want = {{1, 0, 0, 0, -3, 0}, {-1, 1, 0, 0, 1, 0}, {-1, -1, 1, 0, 1, 0},
                  {-1, 0, -1, 0, 1, 0}, {0, 0, 0, 1, 0, 1}, {0, 0, 0, -1, 0, 1}};
  EXPECT_EQ(V, want);
}

TEST(RealStructures, NotEigenbasisForm) {
  try {
    candidate_structure(parse_label("13;3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEigenbasisForm);
  }
}

// every structure is an involutive isometry fixing k and permuting the sets
TEST(RealStructuresProperty, Involutions) {
  for (const auto& e : classify_real_all()) {
    const auto& s = e.structure;
    EXPECT_TRUE(is_valid_real_structure(s)) << e.index;
    int r = e.rank;
    EXPECT_EQ(s.apply(canonical_class(r)), canonical_class(r));
    const auto& S = del_pezzo_sets(r);
    EXPECT_TRUE(permutes(s, S.F));
    EXPECT_TRUE(permutes(s, S.E));
    EXPECT_TRUE(permutes(s, S.G));
    for (const auto& u : S.F) {
      EXPECT_EQ(s.apply(s.apply(u)), u);
      for (const auto& v : S.E) EXPECT_EQ(intersect(s.apply(u), s.apply(v)), intersect(u, v));
    }
    EXPECT_EQ(count_fixed(s, S.F), e.f0);
    EXPECT_EQ(count_fixed(s, S.E), e.f1);
    EXPECT_EQ(count_fixed(s, S.G), e.f2);
  }
}

TEST(ConicFamilies, DegreeFourTable) {
  auto golden = read_rows("conic_table.txt");
  auto t = conic_families_degree4();
  ASSERT_EQ(t.rows.size(), 16u);
  ASSERT_EQ(t.columns, (std::vector<int>{10, 11, 12, 13, 14, 15}));
  ASSERT_EQ(golden.size(), t.rows.size());
  for (std::size_t i = 0; i < golden.size(); ++i) {
    EXPECT_EQ(std::to_string(t.rows[i]), golden[i][0]);
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      std::string s;
      for (int x : t.at(t.rows[i], t.columns[j])) s += (s.empty() ? "" : ",") + std::to_string(x);
      EXPECT_EQ(s.empty() ? "-" : s, golden[i][j + 2]) << t.rows[i] << "," << t.columns[j];
    }
  }
  EXPECT_EQ(t.at(16, 10), (std::set<int>{10}));
  EXPECT_EQ(t.at(25, 10), (std::set<int>{4}));
  EXPECT_EQ(t.at(25, 13), (std::set<int>{2, 4}));
  EXPECT_EQ(t.at(17, 11), (std::set<int>{4, 6}));
  EXPECT_EQ(t.at(24, 13), (std::set<int>{1, 3}));
}

TEST(ConicFamilies, ThreadedMatchesSerial) {
  auto a = conic_families_degree4(Disjointness::Roots, 1), b = conic_families_degree4(Disjointness::Roots, 4);
  EXPECT_EQ(a.cells, b.cells);
}

TEST(ConicFamilies, Witnesses) {
  const auto& c = classify_all()[16];
  ASSERT_EQ(c.index, 17);
  auto ws = conic_family_witnesses(c, real_entry(11));
  auto find = [&](const std::string& basis) -> const ConicWitness* {
    for (const auto& w : ws)
      if (w.basis.size() == 1 && to_string(w.basis[0]) == basis) return &w;
    return nullptr;
  };
  auto text = [](const std::vector<PicardVector>& vs) {
    std::set<std::string> s;
    for (const auto& v : vs) s.insert(to_string(v));
    return s;
  };
  auto b = find("Q1-Q2"), b2 = find("H-Q1-Q2-Q3");
  ASSERT_NE(b, nullptr);
  ASSERT_NE(b2, nullptr);
  EXPECT_EQ(text(b->fixed_two_set), (std::set<std::string>{"H-Q1", "H-Q3", "2H-Q1-Q2-Q4-Q5", "2H-Q1-Q3-Q4-Q5"}));
  EXPECT_EQ(text(b2->fixed_two_set), (std::set<std::string>{"H-Q1", "H-Q2", "H-Q3", "2H-Q1-Q2-Q4-Q5",
                                                            "2H-Q1-Q3-Q4-Q5", "2H-Q2-Q3-Q4-Q5"}));
}
