#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "delpezzo/error.hpp"

namespace delpezzo {

using Rational = mpq_class;
using RMatrix = std::vector<std::vector<Rational>>;

/// Lowest-terms "p/q" (or "p" when q = 1).
inline std::string rational_text(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw Error(ErrorKind::Parse, "bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

inline RMatrix identity_matrix(int n) {
  RMatrix m(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RMatrix multiply(const RMatrix& a, const RMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RMatrix c(n, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(RMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

inline int matrix_rank(RMatrix m) { return static_cast<int>(rref(m).size()); }

/// Basis of {x : m x = 0}, itself in reduced row echelon form.
inline RMatrix kernel(const RMatrix& m, int cols) {
  RMatrix a = m;
  for (auto& row : a) row.resize(cols, 0);
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  RMatrix basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  rref(basis);
  return basis;
}

inline std::optional<RMatrix> inverse(const RMatrix& m) {
  int n = static_cast<int>(m.size());
  RMatrix a(n, std::vector<Rational>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  auto piv = rref(a);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  RMatrix inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

/// Rank of a small integer matrix by fraction-free elimination.
inline int integer_rank(std::vector<std::vector<std::int64_t>> m) {
  int rows = static_cast<int>(m.size());
  if (!rows) return 0;
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    for (int i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      std::int64_t a = m[r][c], b = m[i][c];
      std::int64_t g = 0;
      for (int j = c; j < cols; ++j) {
        m[i][j] = m[i][j] * a - m[r][j] * b;
        g = std::gcd(g, m[i][j] < 0 ? -m[i][j] : m[i][j]);
      }
      if (g > 1)
        for (int j = c; j < cols; ++j) m[i][j] /= g;
    }
    ++r;
  }
  return r;
}

}  // namespace delpezzo
