#include <gtest/gtest.h>

#include "delpezzo/delpezzo_sets.hpp"

using namespace delpezzo;

namespace {

std::vector<PicardVector> classes(const std::vector<std::string>& text, int r) {
  std::vector<PicardVector> out;
  for (const auto& t : text) out.push_back(parse_class(t, r));
  sort_kit(out);
  return out;
}

std::vector<PicardVector> sorted(std::vector<PicardVector> v) {
  sort_kit(v);
  return v;
}

}  // namespace

TEST(Sets, SizesAtIdentity) {
  const int F[] = {2, 8, 20, 40, 72, 126, 240};
  const int E[] = {3, 6, 10, 16, 27, 56, 240};
  const int G[] = {2, 3, 5, 10, 27, 126, 2160};
  for (int r = 2; r <= 8; ++r) {
    const auto& S = del_pezzo_sets(r);
    EXPECT_EQ(static_cast<int>(S.F.size()), F[r - 2]);
    EXPECT_EQ(static_cast<int>(S.E.size()), E[r - 2]);
    EXPECT_EQ(static_cast<int>(S.G.size()), G[r - 2]);
  }
}

// the coefficient tables agree with the intersection characterization
TEST(SetsProperty, TableMatchesCharacterization) {
  for (int r = 2; r <= 8; ++r) {
    auto t = del_pezzo_sets_from_table(r);
    auto f = del_pezzo_sets_from_form(r);
    EXPECT_EQ(t.F, f.F) << r;
    EXPECT_EQ(t.E, f.E) << r;
    EXPECT_EQ(t.G, f.G) << r;
    auto k = canonical_class(r);
    for (const auto& c : t.E) {
      EXPECT_EQ(intersect(c, c), -1);
      EXPECT_EQ(intersect(c, k), -1);
    }
    for (const auto& c : t.G) {
      EXPECT_EQ(intersect(c, c), 0);
      EXPECT_EQ(intersect(c, k), -2);
    }
  }
}

TEST(Sets, RuledCases) {
  auto p0 = ruled_sets(0), p1 = ruled_sets(1), p2 = ruled_sets(2);
  EXPECT_EQ(p0.F.size(), 2u);
  EXPECT_EQ(p1.E.size(), 1u);
  EXPECT_EQ(p2.F.size(), 2u);
  EXPECT_EQ(p1.G.size(), 1u);
  EXPECT_THROW(ruled_sets(3), Error);
}

TEST(Sets, DegreeFourTwoA1) {
  auto X = make_surface_lattice(parse_label("1123,45;5"));
  EXPECT_EQ(X.degree(), 4);
  EXPECT_EQ(sorted(effective_zero_set(X)), classes({"H-Q1-Q2-Q3", "Q4-Q5"}, 5));
  EXPECT_EQ(sorted(irreducible_two_set(X)),
            classes({"H-Q1", "H-Q2", "H-Q3", "H-Q4", "2H-Q1-Q2-Q4-Q5", "2H-Q1-Q3-Q4-Q5", "2H-Q2-Q3-Q4-Q5"}, 5));
  EXPECT_EQ(sorted(indecomposable_one_set(X)),
            classes({"Q5", "Q3", "Q2", "Q1", "H-Q1-Q4", "H-Q2-Q4", "H-Q3-Q4", "H-Q4-Q5"}, 5));
}

TEST(Sets, SmoothSurfaces) {
  for (int r = 2; r <= 8; ++r) {
    C1Label L;
    L.rank = r;
    auto X = make_surface_lattice(L);
    EXPECT_TRUE(effective_zero_set(X).empty());
    EXPECT_EQ(indecomposable_one_set(X).size(), del_pezzo_sets(r).E.size());
    EXPECT_EQ(irreducible_two_set(X).size(), del_pezzo_sets(r).G.size());
  }
}

TEST(Sets, NonBasisRejected) {
  EXPECT_THROW(make_surface_lattice(parse_label("12,13;3")), Error);
}

TEST(Sets, CremonaEquivalence) {
  auto a = make_surface_lattice(parse_label("1123;4")), b = make_surface_lattice(parse_label("34;4"));
  auto c = make_surface_lattice(parse_label("12,34;4"));
  EXPECT_TRUE(cremona_equivalent(a, b));
  EXPECT_FALSE(cremona_equivalent(a, c));
}
