#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "delpezzo/lattice.hpp"
#include "delpezzo/linalg.hpp"

namespace delpezzo {

struct DynkinComponent {
  char series = 'A';  // A, D or E
  int rank = 0;
  std::vector<int> nodes;

  std::string name() const { return std::string(1, series) + std::to_string(rank); }
};

struct DynkinDiagram {
  std::vector<PicardVector> vertices;
  std::vector<std::vector<int>> cartan;  // m_ij = (b_i^vee, b_j)
  std::vector<std::pair<int, int>> edges;
  std::vector<DynkinComponent> components;
  std::string type_string;
};

/// Canonical name: rank descending, then alphabetical, with multiplicities ("A3+2A1").
inline std::string canonical_type_string(std::vector<DynkinComponent> comps) {
  if (comps.empty()) return "A0";
  std::map<std::pair<int, char>, int, std::greater<>> count;
  for (const auto& c : comps) ++count[{c.rank, c.series}];
  // rank descending, letter ascending
  std::vector<std::pair<std::pair<int, char>, int>> items(count.begin(), count.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first.first != b.first.first) return a.first.first > b.first.first;
    return a.first.second < b.first.second;
  });
  std::string s;
  for (const auto& [key, n] : items) {
    if (!s.empty()) s += '+';
    if (n > 1) s += std::to_string(n);
    s += key.second;
    s += std::to_string(key.first);
  }
  return s;
}

namespace detail {

[[noreturn]] inline void not_a_basis(const std::string& why) {
  throw Error(ErrorKind::NotARootBasis, "not a root basis: " + why);
}

/// Classifies one connected simply laced graph by degree sequence and arm lengths.
inline DynkinComponent classify_component(const std::vector<int>& nodes, const std::vector<std::vector<int>>& adj) {
  DynkinComponent c;
  c.nodes = nodes;
  c.rank = static_cast<int>(nodes.size());
  std::size_t edge_count = 0;
  std::vector<int> branch;
  for (int v : nodes) {
    edge_count += adj[v].size();
    if (adj[v].size() > 3) not_a_basis("vertex of degree > 3");
    if (adj[v].size() == 3) branch.push_back(v);
  }
  if (edge_count / 2 != nodes.size() - 1) not_a_basis("diagram contains a cycle");
  if (branch.empty()) {
    c.series = 'A';
    return c;
  }
  if (branch.size() > 1) not_a_basis("more than one branch vertex");
  std::vector<int> arms;
  for (int start : adj[branch[0]]) {
    int prev = branch[0], cur = start, len = 1;
    while (adj[cur].size() == 2) {
      int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) {
    c.series = 'D';
  } else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
    c.series = 'E';
  } else {
    not_a_basis("diagram is not of finite type");
  }
  return c;
}

}  // namespace detail

/// Dynkin diagram of a simple basis (pairwise products in {0,1}, independent).
inline DynkinDiagram dynkin_type(const std::vector<PicardVector>& basis) {
  DynkinDiagram d;
  d.vertices = basis;
  int n = static_cast<int>(basis.size());
  for (int i = 0; i < n; ++i) {
    if (intersect(basis[i], basis[i]) != -2) detail::not_a_basis("vertex is not a -2 class");
  }
  if (n) {
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& b : basis) {
      std::vector<std::int64_t> row(b.coeffs().begin(), b.coeffs().end());
      rows.push_back(row);
    }
    if (integer_rank(rows) != n) detail::not_a_basis("vectors are linearly dependent");
  }
  d.cartan.assign(n, std::vector<int>(n, 0));
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = intersect(basis[i], basis[j]);
      d.cartan[i][j] = -p;
      if (i == j) continue;
      if (p != 0 && p != 1) detail::not_a_basis("pairwise product outside {0,1}");
      if (p == 1) {
        adj[i].push_back(j);
        if (i < j) d.edges.emplace_back(i, j);
      }
    }
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s}, stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    d.components.push_back(detail::classify_component(comp, adj));
  }
  d.type_string = canonical_type_string(d.components);
  return d;
}

}  // namespace delpezzo
