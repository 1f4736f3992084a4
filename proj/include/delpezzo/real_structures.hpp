#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "delpezzo/delpezzo_sets.hpp"
#include "delpezzo/linalg.hpp"
#include "delpezzo/root_classification.hpp"
#include "delpezzo/root_system.hpp"

namespace delpezzo {

/// Involution of the Picard lattice, stored on coefficient columns.
struct RealStructure {
  std::vector<std::vector<int>> matrix;  // matrix[i][j]: coefficient i of the image of basis vector j
  C1Label source_label;
  std::vector<PicardVector> images;  // sigma(H), sigma(Q1), ...

  int rank() const { return source_label.rank; }

  PicardVector apply(const PicardVector& v) const {
    auto out = PicardVector::zero(v.rank());
    int n = static_cast<int>(matrix.size());
    for (int i = 0; i < n; ++i) {
      int s = 0;
      for (int j = 0; j < n; ++j) s += matrix[i][j] * v[j];
      out[i] = s;
    }
    return out;
  }
};

inline bool is_eigenbasis_form(const C1Label& L) {
  for (const auto& e : L.elements) {
    if (e.negated) return false;
    if (e.kind == LabelKind::Difference && e.idx[1] == e.idx[0] + 1) continue;
    if (e.kind == LabelKind::Line && e.idx[0] == 1 && e.idx[1] == 2 && e.idx[2] == 3) continue;
    return false;
  }
  return true;
}

/// Label roots followed by vectors orthogonal to all of them; columns of the result.
inline std::vector<PicardVector> extend_to_basis_columns(const C1Label& L) {
  if (!is_eigenbasis_form(L)) throw Error(ErrorKind::NotEigenbasisForm, "label not in eigenbasis form");
  const int r = L.rank;
  const int dim = r + 1;
  auto cols = L.roots();
  auto A = cols;
  std::sort(A.begin(), A.end(), [](const PicardVector& a, const PicardVector& b) { return b < a; });
  bool has1123 = false;
  auto l1123 = PicardVector::zero(r);
  if (!A.empty() && A.front()[0] == 1) {
    l1123 = A.front();
    A.erase(A.begin());
    has1123 = true;
  }
  auto correct = [&](PicardVector& v) {
    if (has1123) v[0] -= intersect(v, l1123);
  };
  std::vector<PicardVector> ext;
  for (int i = 0; i < dim; ++i) {
    bool zero = std::all_of(A.begin(), A.end(), [i](const PicardVector& a) { return a[i] == 0; });
    if (!zero || (has1123 && i == 0)) continue;
    auto v = PicardVector::zero(r);
    v[i] = 1;
    correct(v);
    ext.push_back(v);
  }
  while (static_cast<int>(cols.size() + ext.size()) < dim) {
    if (A.empty()) throw std::logic_error("extend_to_basis ran out of label columns");
    std::vector<PicardVector> C{A.front()};
    A.erase(A.begin());
    while (!A.empty() && intersect(C.back(), A.front()) != 0) {
      C.push_back(A.front());
      A.erase(A.begin());
    }
    int a = 0, b = dim - 1;
    while (C.front()[a] == 0) ++a;
    while (C.back()[b] == 0) --b;
    auto v = PicardVector::zero(r);
    for (int i = a; i <= b; ++i) v[i] = 1;
    correct(v);
    ext.push_back(v);
  }
  cols.insert(cols.end(), ext.begin(), ext.end());
  return cols;
}

inline RMatrix columns_to_matrix(const std::vector<PicardVector>& cols) {
  int n = static_cast<int>(cols.size());
  RMatrix m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = cols[j][i];
  return m;
}

inline RMatrix extend_to_basis(const C1Label& L) {
  auto V = columns_to_matrix(extend_to_basis_columns(L));
  if (!inverse(V)) throw std::logic_error("extend_to_basis produced a singular matrix");
  return V;
}

/// Diagonal matrix with n leading -1 entries.
inline RMatrix real_eigenvalue_matrix(int size, int n) {
  auto D = identity_matrix(size);
  for (int i = 0; i < n && i < size; ++i) D[i][i] = -1;
  return D;
}

/// M = V D V^-1 for the label, integral or not.
inline RMatrix candidate_matrix(const C1Label& L) {
  auto V = extend_to_basis(L);
  auto D = real_eigenvalue_matrix(static_cast<int>(V.size()), static_cast<int>(L.elements.size()));
  return multiply(multiply(V, D), *inverse(V));
}

inline bool is_integral(const RMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (x.get_den() != 1) return false;
  return true;
}

inline std::optional<RealStructure> candidate_structure(const C1Label& L) {
  auto M = candidate_matrix(L);
  if (!is_integral(M)) return std::nullopt;
  int n = static_cast<int>(M.size());
  RealStructure s;
  s.source_label = L;
  s.matrix.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.matrix[i][j] = static_cast<int>(M[i][j].get_num().get_si());
  for (int j = 0; j < n; ++j) {
    auto v = PicardVector::zero(L.rank);
    for (int i = 0; i < n; ++i) v[i] = s.matrix[i][j];
    s.images.push_back(v);
  }
  return s;
}

/// sigma^2 = 1, sigma preserves the form and fixes k.
inline bool is_valid_real_structure(const RealStructure& s) {
  int r = s.rank();
  int n = r + 1;
  std::vector<PicardVector> basis;
  for (int j = 0; j < n; ++j) basis.push_back(j == 0 ? PicardVector::H(r) : PicardVector::Q(r, j));
  for (const auto& b : basis)
    if (s.apply(s.apply(b)) != b) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (intersect(s.images[i], s.images[j]) != intersect(basis[i], basis[j])) return false;
  auto k = canonical_class(r);
  return s.apply(k) == k;
}

inline int count_fixed(const RealStructure& s, const std::vector<PicardVector>& set) {
  return static_cast<int>(std::count_if(set.begin(), set.end(), [&](const PicardVector& v) { return s.apply(v) == v; }));
}

inline bool permutes(const RealStructure& s, const std::vector<PicardVector>& set) {
  std::set<PicardVector> in(set.begin(), set.end());
  for (const auto& v : set)
    if (!in.count(s.apply(v))) return false;
  return true;
}

struct RealClassEntry {
  int index = 0;
  int rank = 0;
  int c1_index = 0;
  std::string type;
  int f0 = 0, f1 = 0, f2 = 0;
  RealStructure structure;

  const std::vector<PicardVector>& images() const { return structure.images; }
};

/// Integral involutions over all classification rows, indexed from 1.
inline const std::vector<RealClassEntry>& classify_real_all() {
  static std::once_flag flag;
  static std::vector<RealClassEntry> all;
  std::call_once(flag, [] {
    for (const auto& e : classify_all()) {
      if (!is_eigenbasis_form(e.label)) continue;
      auto s = candidate_structure(e.label);
      if (!s) continue;
      if (!is_valid_real_structure(*s)) throw std::logic_error("candidate involution fails the lattice checks");
      const auto& sets = del_pezzo_sets(e.rank);
      RealClassEntry x;
      x.index = static_cast<int>(all.size()) + 1;
      x.rank = e.rank;
      x.c1_index = e.index;
      x.type = e.type;
      x.f0 = count_fixed(*s, sets.F);
      x.f1 = count_fixed(*s, sets.E);
      x.f2 = count_fixed(*s, sets.G);
      x.structure = std::move(*s);
      all.push_back(std::move(x));
    }
  });
  return all;
}

inline std::vector<RealClassEntry> classify_real(int r) {
  check_kit_rank(r);
  std::vector<RealClassEntry> out;
  for (const auto& e : classify_real_all())
    if (e.rank == r) out.push_back(e);
  return out;
}

inline const RealClassEntry& real_entry(int index) {
  const auto& all = classify_real_all();
  if (index < 1 || index > static_cast<int>(all.size()))
    throw Error(ErrorKind::RankOutOfRange, "no real structure with index " + std::to_string(index));
  return all[index - 1];
}

// ---- degree four conic families ----

enum class Disjointness {
  Roots,  // no root generated by b lies in the -1 eigenspace
  Span,   // span(b) meets the -1 eigenspace only in 0
};

struct ConicWitness {
  std::vector<PicardVector> basis;
  std::vector<PicardVector> fixed_two_set;  // sigma-fixed classes of G_irr(b)
};

namespace detail {

/// All sets of positive roots that are independent with pairwise products in {0,1}.
inline const std::vector<std::vector<int>>& positive_bases(int r) {
  static std::array<std::once_flag, kMaxRank + 1> flags;
  static std::array<std::vector<std::vector<int>>, kMaxRank + 1> cache;
  std::call_once(flags[r], [r] {
    const auto& rs = root_system(r);
    std::vector<int> pos = rs.indices(rs.positives());
    std::vector<int> chosen;
    std::vector<std::vector<std::int64_t>> rows;
    auto& out = cache[r];
    auto rec = [&](auto&& self, std::size_t start) -> void {
      out.push_back(chosen);
      for (std::size_t i = start; i < pos.size(); ++i) {
        bool ok = std::all_of(chosen.begin(), chosen.end(), [&](int c) {
          int g = rs.dot(c, pos[i]);
          return g == 0 || g == 1;
        });
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
  });
  return cache[r];
}

inline bool disjoint_from_minus(const RootSystem& rs, const RealStructure& s, const std::vector<int>& b,
                                Disjointness mode) {
  if (b.empty()) return true;
  if (mode == Disjointness::Roots) {
    for (int x : rs.indices(rs.closure(b)))
      if (s.apply(rs.root(x)) == -rs.root(x)) return false;
    return true;
  }
  std::vector<std::vector<std::int64_t>> rows;
  for (int x : b) rows.emplace_back(rs.root(x).coeffs().begin(), rs.root(x).coeffs().end());
  auto minus = s.source_label.roots();
  for (const auto& v : minus) rows.emplace_back(v.coeffs().begin(), v.coeffs().end());
  return integer_rank(rows) == static_cast<int>(b.size() + minus.size());
}

}  // namespace detail

/// Bases b equivalent to class c, fixed by sigma and disjoint from its -1 eigenspace.
inline std::vector<ConicWitness> conic_family_witnesses(const ClassificationEntry& c, const RealClassEntry& t,
                                                        Disjointness mode = Disjointness::Roots) {
  if (c.rank != t.rank) throw Error(ErrorKind::RankOutOfRange, "class and real structure have different ranks");
  const int r = c.rank;
  const auto& rs = root_system(r);
  const auto& s = t.structure;
  const auto& G = del_pezzo_sets(r).G;
  std::vector<ConicWitness> out;
  for (const auto& b : detail::positive_bases(r)) {
    if (b.size() != c.label.elements.size()) continue;
    if (basis_invariant(rs, b) != c.invariant) continue;
    std::set<int> bs(b.begin(), b.end());
    bool fixed = std::all_of(b.begin(), b.end(), [&](int x) { return bs.count(rs.index_of(s.apply(rs.root(x)))) > 0; });
    if (!fixed || !detail::disjoint_from_minus(rs, s, b, mode)) continue;
    ConicWitness w;
    for (int x : b) w.basis.push_back(rs.root(x));
    std::vector<PicardVector> eff;
    if (!b.empty()) eff = rs.vectors(rs.closure(b) & rs.positives());
    for (const auto& g : detail::nonnegative_on(G, eff))
      if (s.apply(g) == g) w.fixed_two_set.push_back(g);
    out.push_back(std::move(w));
  }
  return out;
}

struct ConicTable {
  std::vector<int> rows;     // classification indices
  std::vector<int> columns;  // real structure indices
  std::map<std::pair<int, int>, std::set<int>> cells;

  const std::set<int>& at(int row, int col) const { return cells.at({row, col}); }
};

/// Possible numbers of real conic families for each degree four class and real structure.
inline ConicTable conic_families_degree4(Disjointness mode = Disjointness::Roots, int threads = 1) {
  const int r = 5;
  auto classes = classify(r);
  auto reals = classify_real(r);
  detail::positive_bases(r);
  ConicTable table;
  for (const auto& c : classes) table.rows.push_back(c.index);
  for (const auto& t : reals) table.columns.push_back(t.index);
  auto column = [&](const RealClassEntry& t) {
    std::map<int, std::set<int>> col;
    for (const auto& c : classes) {
      auto& cell = col[c.index];
      for (const auto& w : conic_family_witnesses(c, t, mode))
        cell.insert(static_cast<int>(w.fixed_two_set.size()));
    }
    return col;
  };
  std::vector<std::map<int, std::set<int>>> results(reals.size());
  if (threads <= 1) {
    for (std::size_t j = 0; j < reals.size(); ++j) results[j] = column(reals[j]);
  } else {
    std::vector<std::future<std::map<int, std::set<int>>>> futs;
    for (const auto& t : reals) futs.push_back(std::async(std::launch::async, column, std::cref(t)));
    for (std::size_t j = 0; j < futs.size(); ++j) results[j] = futs[j].get();
  }
  for (std::size_t j = 0; j < reals.size(); ++j)
    for (auto& [row, cell] : results[j]) table.cells[{row, reals[j].index}] = std::move(cell);
  return table;
}

}  // namespace delpezzo
