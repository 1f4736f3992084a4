#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "delpezzo/dynkin.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/root_system.hpp"

namespace delpezzo {

/// Weyl-invariant fingerprint of a root subsystem S.
struct SubsystemInvariant {
  std::string type_S;
  int size_S = 0;
  int size_C = 0;
  std::string type_C;
  int size_K = 0;
  std::string type_K;
  int extra = 0;  // rank 3 only: roots of S in the A1 factor

  friend auto operator<=>(const SubsystemInvariant&, const SubsystemInvariant&) = default;
  friend bool operator==(const SubsystemInvariant&, const SubsystemInvariant&) = default;
};

inline std::vector<int> root_indices(const RootSystem& rs, const std::vector<PicardVector>& vs) {
  std::vector<int> out;
  for (const auto& v : vs) {
    int i = rs.index_of(v);
    if (i < 0) throw Error(ErrorKind::NotARoot, to_string(v) + " is not a root");
    out.push_back(i);
  }
  return out;
}

inline std::vector<PicardVector> complement(const std::vector<PicardVector>& S, int r) {
  const auto& rs = root_system(r);
  return rs.vectors(rs.complement(root_indices(rs, S)));
}

inline std::vector<PicardVector> double_complement(const std::vector<PicardVector>& S, int r) {
  const auto& rs = root_system(r);
  return rs.vectors(rs.span(root_indices(rs, S)));
}

/// Invariant of the subsystem generated by a simple basis (given as root indices).
inline SubsystemInvariant basis_invariant(const RootSystem& rs, const std::vector<int>& basis) {
  SubsystemInvariant inv;
  inv.type_S = rs.type_of_basis(basis);
  RootMask S = basis.empty() ? RootMask{} : rs.closure(basis);
  inv.size_S = static_cast<int>(S.count());
  RootMask C = rs.complement(basis);
  inv.size_C = static_cast<int>(C.count());
  inv.type_C = rs.type_of(C);
  RootMask K = rs.span(basis);
  inv.size_K = static_cast<int>(K.count());
  inv.type_K = rs.type_of(K);
  if (rs.rank() == 3) {
    int line = rs.index_of(PicardVector::of({1, -1, -1, -1}));
    inv.extra = S.test(line) ? 1 : 0;
  }
  return inv;
}

inline SubsystemInvariant invariant(const C1Label& L) {
  const auto& rs = root_system(L.rank);
  auto roots = L.roots();
  dynkin_type(roots);  // validates the basis
  return basis_invariant(rs, root_indices(rs, roots));
}

/// Weyl equivalence of the generated subsystems.
inline bool equivalent(const C1Label& a, const C1Label& b) {
  if (a.rank != b.rank) throw Error(ErrorKind::RankOutOfRange, "labels have different ranks");
  return invariant(a) == invariant(b);
}

/// The literal candidate sets Z0..Z3.
inline const std::array<std::vector<std::string>, 4>& z_sets() {
  static const std::array<std::vector<std::string>, 4> z = {{
      {"12", "23", "34", "45", "56", "67", "78", "1123", "-1145", "-1345", "-1167", "-1178", "-278", "-218", "-308",
       "218"},
      {"1123", "12", "23", "34", "45", "56", "67", "78"},
      {"1123", "12", "23", "34", "45", "56", "67", "78", "1145", "1347", "1678", "1127", "1456", "1567", "234", "278",
       "308"},
      {"1123", "1345", "1165", "1285", "1673", "1274", "1684", "1178"},
  }};
  return z;
}

struct ClassificationEntry {
  int index = 0;
  int rank = 0;
  C1Label label;
  std::string type;
  SubsystemInvariant invariant;
  int source = 0;  // which Z set supplied the representative
};

namespace detail {

struct Candidate {
  std::vector<LabelElement> elements;
  std::vector<int> roots;
  int preference = 0;  // 0 best
  std::vector<std::string> sorted_tokens;
  int source = 0;
};

inline std::vector<std::string> sorted_tokens(const std::vector<LabelElement>& els) {
  std::vector<std::string> t;
  for (const auto& e : els) t.push_back(e.token());
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

/// Lower preference first, then the lexicographically largest descending token tuple.
inline bool better(const Candidate& a, const Candidate& b) {
  if (a.preference != b.preference) return a.preference < b.preference;
  return a.sorted_tokens > b.sorted_tokens;
}

/// Components of a type string, largest first, ordered by (series, rank).
inline std::vector<std::pair<int, int>> component_key(const std::string& type) {
  std::vector<std::pair<int, int>> out;
  std::size_t pos = 0;
  while (pos < type.size()) {
    auto end = type.find('+', pos);
    std::string part = type.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? type.size() : end + 1;
    std::size_t i = 0;
    int mult = 0;
    while (i < part.size() && std::isdigit(static_cast<unsigned char>(part[i]))) mult = mult * 10 + (part[i++] - '0');
    if (mult == 0) mult = 1;
    int series = part[i] == 'A' ? 0 : part[i] == 'D' ? 1 : 2;
    int rank = std::stoi(part.substr(i + 1));
    if (rank == 0) continue;
    for (int k = 0; k < mult; ++k) out.emplace_back(series, rank);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline std::vector<LabelElement> z_elements(int set, int r) {
  std::vector<LabelElement> out;
  for (const auto& t : z_sets()[set]) {
    auto e = parse_label_element(t);
    if (e.kind == LabelKind::Conic) {
      if (r < 6) continue;
      try {
        phi(e, r);
      } catch (const Error&) {
        continue;
      }
    } else {
      if (e.max_index() > r) continue;
      if (e.kind == LabelKind::Cubic && r != 8) continue;
    }
    out.push_back(e);
  }
  return out;
}

/// All subsets of Z_set (rank-restricted) that are independent with pairwise products in {0,1}.
template <class Visit>
void enumerate_y(const RootSystem& rs, int set, Visit&& visit) {
  auto els = z_elements(set, rs.rank());
  std::vector<int> idx;
  for (const auto& e : els) idx.push_back(rs.index_of(phi(e, rs.rank())));
  std::vector<int> chosen;
  std::vector<std::vector<std::int64_t>> rows;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    visit(chosen, els, idx);
    for (std::size_t i = start; i < els.size(); ++i) {
      bool ok = true;
      for (int c : chosen) {
        int g = rs.dot(idx[c], idx[i]);
        if (g != 0 && g != 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const auto& v = rs.root(idx[i]);
      rows.emplace_back(v.coeffs().begin(), v.coeffs().end());
      if (integer_rank(rows) == static_cast<int>(rows.size())) {
        chosen.push_back(static_cast<int>(i));
        self(self, i + 1);
        chosen.pop_back();
      }
      rows.pop_back();
    }
  };
  rec(rec, 0);
}

inline std::vector<ClassificationEntry> classify_rank(int r) {
  const auto& rs = root_system(r);
  // preference order Y1 > Y2 > Y3 > Y0
  const std::array<int, 4> order = {1, 2, 3, 0};
  std::map<SubsystemInvariant, Candidate> best;
  for (int p = 0; p < 4; ++p) {
    int set = order[p];
    enumerate_y(rs, set, [&](const std::vector<int>& chosen, const std::vector<LabelElement>& els,
                             const std::vector<int>& idx) {
      Candidate c;
      for (int k : chosen) {
        c.elements.push_back(els[k]);
        c.roots.push_back(idx[k]);
      }
      c.preference = p;
      c.source = set;
      c.sorted_tokens = sorted_tokens(c.elements);
      auto inv = basis_invariant(rs, c.roots);
      auto it = best.find(inv);
      if (it == best.end()) {
        best.emplace(inv, std::move(c));
      } else if (better(c, it->second)) {
        it->second = std::move(c);
      }
    });
  }
  std::vector<ClassificationEntry> out;
  for (auto& [inv, c] : best) {
    ClassificationEntry e;
    e.rank = r;
    e.label.rank = r;
    e.label.elements = c.elements;
    e.type = inv.type_S;
    e.invariant = inv;
    e.source = c.source;
    out.push_back(std::move(e));
  }
  // rank of S, then component list, then representative tokens descending
  std::sort(out.begin(), out.end(), [](const ClassificationEntry& a, const ClassificationEntry& b) {
    auto ka = a.label.elements.size(), kb = b.label.elements.size();
    if (ka != kb) return ka < kb;
    auto ca = component_key(a.type), cb = component_key(b.type);
    if (ca != cb) return ca < cb;
    return sorted_tokens(a.label.elements) > sorted_tokens(b.label.elements);
  });
  return out;
}

}  // namespace detail

/// All Weyl classes for ranks 2..8 with global row indices starting at 1.
inline const std::vector<ClassificationEntry>& classify_all() {
  static std::once_flag flag;
  static std::vector<ClassificationEntry> all;
  std::call_once(flag, [] {
    for (int r = 2; r <= kMaxRank; ++r) {
      auto part = detail::classify_rank(r);
      for (auto& e : part) {
        e.index = static_cast<int>(all.size()) + 1;
        all.push_back(std::move(e));
      }
    }
  });
  return all;
}

inline std::vector<ClassificationEntry> classify(int r) {
  check_kit_rank(r);
  std::vector<ClassificationEntry> out;
  for (const auto& e : classify_all())
    if (e.rank == r) out.push_back(e);
  return out;
}

/// Row of the classification table whose class contains L.
inline const ClassificationEntry& class_of(const C1Label& L) {
  auto inv = invariant(L);
  for (const auto& e : classify_all())
    if (e.rank == L.rank && e.invariant == inv) return e;
  throw Error(ErrorKind::NotARootBasis, "label " + L.text() + " matches no classified subsystem");
}

}  // namespace delpezzo
