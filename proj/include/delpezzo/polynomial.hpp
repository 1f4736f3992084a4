#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "delpezzo/error.hpp"
#include "delpezzo/linalg.hpp"

namespace delpezzo {

// ---- univariate polynomials, coefficients from low to high degree ----

using UPoly = std::vector<Rational>;

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Rational eval(const UPoly& p, const Rational& x) {
  Rational s = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
  return s;
}

inline UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

inline UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  trim(a);
  int db = degree(b);
  if (a.size() < b.size()) return {{}, a};
  UPoly q(a.size() - b.size() + 1, Rational(0));
  for (int k = degree(a); k >= db; --k) {
    Rational c = a[k] / b[db];
    q[k - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  a.resize(db);
  trim(a);
  trim(q);
  return {q, a};
}

inline UPoly monic(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational l = p.back();
  for (auto& c : p) c /= l;
  return p;
}

inline UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline UPoly square_free_part(const UPoly& p) {
  if (degree(p) <= 0) return monic(p);
  return monic(divmod(p, gcd(p, derivative(p))).first);
}

namespace detail {

inline std::vector<UPoly> sturm_sequence(const UPoly& f) {
  std::vector<UPoly> s{f, derivative(f)};
  while (!s.back().empty()) {
    auto r = divmod(s[s.size() - 2], s.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    s.push_back(std::move(r));
  }
  return s;
}

inline int sign_changes(const std::vector<UPoly>& s, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : s) {
    int sg = sgn(eval(p, x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

inline void integer_roots_in(const UPoly& g, const std::vector<UPoly>& s, const mpz_class& lo, const mpz_class& hi,
                             std::vector<mpz_class>& out) {
  int c = sign_changes(s, Rational(lo)) - sign_changes(s, Rational(hi));
  if (c <= 0) return;
  if (hi - lo == 1) {
    if (eval(g, Rational(hi)) == 0) out.push_back(hi);
    return;
  }
  mpz_class mid = lo + (hi - lo) / 2;
  integer_roots_in(g, s, lo, mid, out);
  integer_roots_in(g, s, mid, hi, out);
}

}  // namespace detail

/// Distinct rational roots in increasing order.
inline std::vector<Rational> rational_roots(const UPoly& p) {
  UPoly f = square_free_part(p);
  std::vector<Rational> roots;
  if (degree(f) <= 0) return roots;
  if (f[0] == 0) {
    roots.push_back(0);
    f.erase(f.begin());
  }
  if (degree(f) <= 0) return roots;
  // integer primitive form a_n x^n + ... ; y = a_n x turns it monic with integer coefficients
  mpz_class den = 1;
  for (const auto& c : f) den = lcm(den, c.get_den());
  std::vector<mpz_class> a;
  for (const auto& c : f) a.push_back(mpz_class(c * den));
  int n = degree(f);
  mpz_class lead = a[n];
  // g(y) = sum a_i lead^(n-1-i) y^i for i < n, and y^n
  UPoly g(n + 1, Rational(0));
  g[n] = 1;
  mpz_class scale = 1;
  for (int i = n - 1; i >= 0; --i) {
    g[i] = Rational(a[i] * scale);
    scale *= lead;
  }
  mpz_class bound = 1;
  for (int i = 0; i < n; ++i) {
    mpz_class v = abs(g[i].get_num());
    if (v + 1 > bound) bound = v + 1;
  }
  auto s = detail::sturm_sequence(g);
  std::vector<mpz_class> ys;
  detail::integer_roots_in(g, s, -bound - 1, bound, ys);
  for (const auto& y : ys) roots.push_back(Rational(y, lead));
  for (auto& r : roots) r.canonicalize();
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// p with the given roots divided out (each once).
inline UPoly remove_roots(UPoly p, const std::vector<Rational>& roots) {
  for (const auto& r : roots) p = divmod(p, UPoly{-r, Rational(1)}).first;
  return p;
}

inline UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  // Newton divided differences
  std::size_t n = xs.size();
  std::vector<Rational> c = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
  UPoly p{c[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    p = mul(p, UPoly{-xs[k], Rational(1)});
    if (p.empty()) p.push_back(0);
    p[0] += c[k];
  }
  trim(p);
  return p;
}

inline Rational determinant(RMatrix m) {
  int n = static_cast<int>(m.size());
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

/// Sylvester resultant of a and b taken with formal degrees da, db.
inline Rational resultant(const UPoly& a, int da, const UPoly& b, int db) {
  int n = da + db;
  if (n == 0) return 1;
  RMatrix s(n, std::vector<Rational>(n, Rational(0)));
  auto coeff = [](const UPoly& p, int i) { return i < static_cast<int>(p.size()) ? p[i] : Rational(0); };
  for (int r = 0; r < db; ++r)
    for (int i = 0; i <= da; ++i) s[r][r + i] = coeff(a, da - i);
  for (int r = 0; r < da; ++r)
    for (int i = 0; i <= db; ++i) s[db + r][r + i] = coeff(b, db - i);
  return determinant(std::move(s));
}

// ---- multivariate polynomials in up to three variables ----

using Exponent = std::array<int, 3>;

/// Sparse polynomial in (x,y,z) or (u,v) with exact rational coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term({0, 0, 0}, c);
    return p;
  }
  static Polynomial variable(int nvars, int i) {
    Polynomial p(nvars);
    Exponent e{0, 0, 0};
    e[i] = 1;
    p.add_term(e, 1);
    return p;
  }
  static Polynomial monomial(int nvars, Exponent e, const Rational& c = 1) {
    Polynomial p(nvars);
    p.add_term(e, c);
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto& t = terms_[e];
    t += c;
    if (t == 0) terms_.erase(e);
  }

  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  /// Lowest total degree of a term (order at the origin); -1 for zero.
  int order() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = e[0] + e[1] + e[2];
      if (d < 0 || s < d) d = s;
    }
    return d;
  }

  int degree_in(int i) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }

  bool is_homogeneous() const {
    int d = -2;
    for (const auto& [e, c] : terms_) {
      int s = e[0] + e[1] + e[2];
      if (d == -2) d = s;
      if (s != d) return false;
    }
    return true;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial p(std::max(a.nvars_, b.nvars_));
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) p.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return p;
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& a) {
    Polynomial p(a.nvars_);
    for (const auto& [e, c] : a.terms_) p.add_term(e, s * c);
    return p;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(int k) const {
    Polynomial r = constant(nvars_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Replace variable i by the given polynomials (all variables simultaneously).
  Polynomial substitute(const std::vector<Polynomial>& images, int out_nvars) const {
    Polynomial out(out_nvars);
    std::vector<std::map<int, Polynomial>> powers(images.size());
    auto power = [&](int i, int k) -> const Polynomial& {
      auto it = powers[i].find(k);
      if (it != powers[i].end()) return it->second;
      return powers[i].emplace(k, images[i].pow(k)).first->second;
    };
    for (const auto& [e, c] : terms_) {
      Polynomial t = constant(out_nvars, c);
      for (int i = 0; i < nvars_; ++i)
        if (e[i]) t = t * power(i, e[i]);
      out += t;
    }
    out.nvars_ = out_nvars;
    return out;
  }

  Rational evaluate(const std::vector<Rational>& at) const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= at[i];
      s += t;
    }
    return s;
  }

  Polynomial derivative(int i, int times = 1) const {
    Polynomial p(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] < times) continue;
      Rational f = c;
      for (int k = 0; k < times; ++k) f *= e[i] - k;
      Exponent n = e;
      n[i] -= times;
      p.add_term(n, f);
    }
    return p;
  }

  /// Univariate polynomial in variable i after fixing the other variables.
  UPoly restrict_to(int i, const std::vector<Rational>& at) const {
    UPoly out;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int j = 0; j < nvars_; ++j)
        if (j != i)
          for (int k = 0; k < e[j]; ++k) t *= at[j];
      if (static_cast<int>(out.size()) <= e[i]) out.resize(e[i] + 1, Rational(0));
      out[e[i]] += t;
    }
    trim(out);
    return out;
  }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_ = 2;
  std::map<Exponent, Rational> terms_;
};

inline const std::vector<std::string>& affine_names() {
  static const std::vector<std::string> n = {"u", "v"};
  return n;
}
inline const std::vector<std::string>& projective_names() {
  static const std::vector<std::string> n = {"x", "y", "z"};
  return n;
}

inline std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  // highest degree first, then lexicographic in the exponents
  std::vector<std::pair<Exponent, Rational>> ts(terms_.rbegin(), terms_.rend());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    return a.first[0] + a.first[1] + a.first[2] > b.first[0] + b.first[1] + b.first[2];
  });
  for (const auto& [e, c] : ts) {
    Rational a = abs(c);
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term = mono.empty() ? rational_text(a) : (a == 1 ? mono : rational_text(a) + "*" + mono);
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

/// Parse a polynomial such as "1/25*x^2*y - 2/35*x*y^2 + y*z^2".
inline Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names) {
  Polynomial p(static_cast<int>(names.size()));
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::Parse, "cannot parse polynomial '" + text + "': " + why); };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) fail("empty");
  bool first = true;
  while (i < text.size()) {
    skip();
    int sign = 1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational c = sign;
    Exponent e{0, 0, 0};
    bool any = false;
    while (true) {
      skip();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        std::size_t j = i;
        while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
        c *= parse_rational(text.substr(i, j - i));
        i = j;
      } else if (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
        std::size_t j = i;
        while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
        std::string name = text.substr(i, j - i);
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) fail("unknown variable " + name);
        i = j;
        int k = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          std::size_t s = i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          if (s == i) fail("missing exponent");
          k = std::stoi(text.substr(s, i - s));
        }
        e[it - names.begin()] += k;
      } else {
        fail("unexpected character");
      }
      any = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    p.add_term(e, c);
  }
  return p;
}

// ---- affine charts and blow-ups (two variables u, v) ----

inline Polynomial translate(const Polynomial& g, const Rational& a, const Rational& b) {
  auto u = Polynomial::variable(2, 0), v = Polynomial::variable(2, 1);
  return g.substitute({u + Polynomial::constant(2, a), v + Polynomial::constant(2, b)}, 2);
}

/// g(uv, v)
inline Polynomial pullback_t(const Polynomial& g) {
  auto u = Polynomial::variable(2, 0), v = Polynomial::variable(2, 1);
  return g.substitute({u * v, v}, 2);
}

/// g(u, uv)
inline Polynomial pullback_s(const Polynomial& g) {
  auto u = Polynomial::variable(2, 0), v = Polynomial::variable(2, 1);
  return g.substitute({u, u * v}, 2);
}

/// Exact division by the monomial var^k.
inline Polynomial polynomial_quotient(const Polynomial& p, int var, int k) {
  Polynomial q(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] < k) throw Error(ErrorKind::InexactDivision, "inexact polynomial division");
    Exponent n = e;
    n[var] -= k;
    q.add_term(n, c);
  }
  return q;
}

/// Division by var^k that drops the terms of lower degree in var.
inline Polynomial truncated_quotient(const Polynomial& p, int var, int k) {
  Polynomial q(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] < k) continue;
    Exponent n = e;
    n[var] -= k;
    q.add_term(n, c);
  }
  return q;
}

/// Exact division by a general polynomial (multivariate long division, zero remainder required).
inline Polynomial polynomial_quotient(Polynomial p, const Polynomial& d) {
  if (d.is_zero()) throw Error(ErrorKind::InexactDivision, "division by zero polynomial");
  Polynomial q(p.nvars());
  auto lead = [](const Polynomial& f) { return *f.terms().rbegin(); };
  auto [de, dc] = lead(d);
  while (!p.is_zero()) {
    auto [pe, pc] = lead(p);
    Exponent m{};
    for (int i = 0; i < 3; ++i) {
      m[i] = pe[i] - de[i];
      if (m[i] < 0) throw Error(ErrorKind::InexactDivision, "inexact polynomial division");
    }
    auto t = Polynomial::monomial(p.nvars(), m, pc / dc);
    q += t;
    p -= t * d;
  }
  return q;
}

// ---- common zeros of bivariate systems ----

namespace detail {

inline UPoly eliminant_u(const Polynomial& p1, const Polynomial& p2) {
  int dv1 = std::max(p1.degree_in(1), 0), dv2 = std::max(p2.degree_in(1), 0);
  int bound = std::max(p1.total_degree(), 0) * std::max(p2.total_degree(), 0) + 1;
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    Rational c = k;
    xs.push_back(c);
    ys.push_back(resultant(p1.restrict_to(1, {c, 0}), dv1, p2.restrict_to(1, {c, 0}), dv2));
  }
  return interpolate(xs, ys);
}

inline std::vector<Rational> restricted_roots(const std::vector<Polynomial>& gens, int var, const Rational& other) {
  UPoly g;
  for (const auto& p : gens) {
    std::vector<Rational> at(2, Rational(0));
    at[1 - var] = other;
    g = gcd(g, p.restrict_to(var, at));
  }
  if (g.empty()) throw Error(ErrorKind::InfiniteBaseLocus, "base locus contains a curve");
  auto roots = rational_roots(g);
  if (degree(remove_roots(square_free_part(g), roots)) > 0)
    throw Error(ErrorKind::OutsideField, "base point outside coefficient field");
  return roots;
}

}  // namespace detail

enum class Restriction { None, VZero, UZero };

/// Common zeros of bivariate polynomials, optionally restricted to v=0 or u=0.
inline std::vector<std::pair<Rational, Rational>> zero_set(std::vector<Polynomial> gens,
                                                           Restriction restrict = Restriction::None) {
  std::erase_if(gens, [](const Polynomial& p) { return p.is_zero(); });
  if (gens.empty()) throw Error(ErrorKind::EmptySeries, "empty linear series");
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& p : gens)
    if (p.total_degree() == 0) return out;
  if (restrict == Restriction::VZero) {
    for (const auto& a : detail::restricted_roots(gens, 0, 0)) out.emplace_back(a, 0);
    return out;
  }
  if (restrict == Restriction::UZero) {
    for (const auto& b : detail::restricted_roots(gens, 1, 0)) out.emplace_back(0, b);
    return out;
  }
  // gcd of resultants of random combinations eliminates v
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(1, 97);
  auto combo = [&] {
    Polynomial p(2);
    for (const auto& g : gens) p += Rational(coef(rng)) * g;
    return p;
  };
  UPoly elim;
  int good = 0;
  if (gens.size() == 1) throw Error(ErrorKind::InfiniteBaseLocus, "base locus contains a curve");
  for (int attempt = 0; attempt < 12 && good < 3; ++attempt) {
    auto r = detail::eliminant_u(combo(), combo());
    if (r.empty()) continue;
    elim = gcd(elim, r);
    ++good;
  }
  if (good == 0) throw Error(ErrorKind::InfiniteBaseLocus, "base locus contains a curve");
  auto us = rational_roots(elim);
  std::set<std::pair<Rational, Rational>> pts;
  std::vector<Rational> genuine_us;
  for (const auto& a : us) {
    UPoly g;
    for (const auto& p : gens) g = gcd(g, p.restrict_to(1, {a, 0}));
    if (g.empty()) throw Error(ErrorKind::InfiniteBaseLocus, "base locus contains a curve");
    if (degree(g) <= 0) continue;
    auto bs = rational_roots(g);
    if (degree(remove_roots(square_free_part(g), bs)) > 0)
      throw Error(ErrorKind::OutsideField, "base point outside coefficient field");
    for (const auto& b : bs) pts.emplace(a, b);
    genuine_us.push_back(a);
  }
  // irrational u-coordinates of genuine zeros survive in the eliminant
  UPoly rest = remove_roots(square_free_part(elim), us);
  if (degree(rest) > 0) {
    UPoly check = rest;
    for (int k = 0; k < 3 && degree(check) > 0; ++k) {
      auto r = detail::eliminant_u(combo(), combo());
      if (!r.empty()) check = gcd(check, r);
    }
    if (degree(check) > 0) throw Error(ErrorKind::OutsideField, "base point outside coefficient field");
  }
  return {pts.begin(), pts.end()};
}

}  // namespace delpezzo
