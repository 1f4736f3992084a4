#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "delpezzo/error.hpp"

namespace delpezzo {

enum class BasisKind : std::uint8_t { DelPezzo, Ruled };

inline constexpr int kMaxRank = 8;

/// Integer divisor class w.r.t. <H,Q1..Qr> or the ruled basis <H,F>.
class PicardVector {
 public:
  PicardVector() = default;

  static PicardVector zero(int r) {
    check_del_pezzo_rank(r);
    PicardVector v;
    v.kind_ = BasisKind::DelPezzo;
    v.rank_ = static_cast<std::uint8_t>(r);
    return v;
  }

  static PicardVector of(std::initializer_list<int> coeffs) {
    return of(std::span<const int>(coeffs.begin(), coeffs.size()));
  }

  static PicardVector of(std::span<const int> coeffs) {
    if (coeffs.size() < 2 || coeffs.size() > kMaxRank + 1)
      throw Error(ErrorKind::RankOutOfRange, "Del Pezzo rank must lie in [1..8]");
    PicardVector v = zero(static_cast<int>(coeffs.size()) - 1);
    std::copy(coeffs.begin(), coeffs.end(), v.c_.begin());
    return v;
  }

  // Ruled basis P(n): coefficients of H and F.
  static PicardVector ruled(int n, int h, int f) {
    if (n < 0 || n > 2) throw Error(ErrorKind::RankOutOfRange, "ruled case must be P(0), P(1) or P(2)");
    PicardVector v;
    v.kind_ = BasisKind::Ruled;
    v.rank_ = static_cast<std::uint8_t>(n);
    v.c_[0] = h;
    v.c_[1] = f;
    return v;
  }

  static PicardVector H(int r) {
    auto v = zero(r);
    v.c_[0] = 1;
    return v;
  }

  static PicardVector Q(int r, int i) {
    auto v = zero(r);
    if (i < 1 || i > r) throw Error(ErrorKind::InvalidLabel, "Q index out of range");
    v.c_[i] = 1;
    return v;
  }

  BasisKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int size() const { return kind_ == BasisKind::Ruled ? 2 : rank_ + 1; }
  int operator[](int i) const { return c_[i]; }
  int& operator[](int i) { return c_[i]; }
  std::span<const int> coeffs() const { return {c_.data(), static_cast<std::size_t>(size())}; }
  std::vector<int> to_vector() const { return {c_.begin(), c_.begin() + size()}; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
  }

  PicardVector& operator+=(const PicardVector& o) {
    same_basis(o);
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  PicardVector& operator-=(const PicardVector& o) {
    same_basis(o);
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  PicardVector& operator*=(int s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend PicardVector operator+(PicardVector a, const PicardVector& b) { return a += b; }
  friend PicardVector operator-(PicardVector a, const PicardVector& b) { return a -= b; }
  friend PicardVector operator*(int s, PicardVector a) { return a *= s; }
  friend PicardVector operator-(PicardVector a) { return a *= -1; }

  // Storage order only; the kit order lives in kit_compare.
  friend auto operator<=>(const PicardVector&, const PicardVector&) = default;
  friend bool operator==(const PicardVector&, const PicardVector&) = default;

  void same_basis(const PicardVector& o) const {
    if (kind_ != o.kind_ || rank_ != o.rank_)
      throw Error(ErrorKind::IncompatibleBases, "incompatible lattice bases");
  }

  static void check_del_pezzo_rank(int r) {
    if (r < 1 || r > kMaxRank) throw Error(ErrorKind::RankOutOfRange, "Del Pezzo rank must lie in [1..8]");
  }

 private:
  BasisKind kind_ = BasisKind::DelPezzo;
  std::uint8_t rank_ = 0;
  std::array<int, kMaxRank + 1> c_{};
};

inline int intersect(const PicardVector& u, const PicardVector& v) {
  u.same_basis(v);
  if (u.kind() == BasisKind::Ruled) {
    // F^2 = 0, FH = 1, H^2 = n
    return u[0] * v[0] * u.rank() + u[0] * v[1] + u[1] * v[0];
  }
  int s = u[0] * v[0];
  for (int i = 1; i <= u.rank(); ++i) s -= u[i] * v[i];
  return s;
}

inline void check_kit_rank(int r) {
  if (r < 2 || r > kMaxRank) throw Error(ErrorKind::RankOutOfRange, "C1 kit rank must lie in [2..8]");
}

/// k = -3H + Q1 + ... + Qr
inline PicardVector canonical_class(int r) {
  PicardVector::check_del_pezzo_rank(r);
  auto k = PicardVector::zero(r);
  k[0] = -3;
  for (int i = 1; i <= r; ++i) k[i] = 1;
  return k;
}

// Ruled canonical class -K = 2H - (n-2)F.
inline PicardVector ruled_anticanonical(int n) { return PicardVector::ruled(n, 2, -(n - 2)); }

inline PicardVector anticanonical(const PicardVector& like) {
  if (like.kind() == BasisKind::Ruled) return ruled_anticanonical(like.rank());
  return -canonical_class(like.rank());
}

/// Kit order: lexicographic on (m0, m1, ..., mr), so Qa-Qb (a<b) and H-Qa-Qb-Qc are positive
/// and {1123, 12, ..., 78} is the simple system.
inline std::strong_ordering kit_compare(const PicardVector& a, const PicardVector& b) {
  a.same_basis(b);
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

struct KitLess {
  bool operator()(const PicardVector& a, const PicardVector& b) const { return kit_compare(a, b) < 0; }
};

inline bool is_positive(const PicardVector& v) {
  return kit_compare(v, PicardVector::zero(v.rank())) > 0;
}

inline void sort_kit(std::vector<PicardVector>& vs) { std::sort(vs.begin(), vs.end(), KitLess{}); }

/// Human form such as "2H-Q1-Q2-Q3" or "H-2F".
inline std::string to_string(const PicardVector& v) {
  std::ostringstream os;
  bool first = true;
  auto term = [&](int c, const std::string& name) {
    if (c == 0) return;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    int a = c < 0 ? -c : c;
    if (a != 1) os << a;
    os << name;
    first = false;
  };
  if (v.kind() == BasisKind::Ruled) {
    term(v[0], "H");
    term(v[1], "F");
  } else {
    term(v[0], "H");
    for (int i = 1; i <= v.rank(); ++i) term(v[i], "Q" + std::to_string(i));
  }
  return first ? "0" : os.str();
}

/// Inverse of to_string for Del Pezzo classes of rank r.
inline PicardVector parse_class(const std::string& text, int r) {
  auto v = PicardVector::zero(r);
  std::size_t i = 0;
  auto fail = [&] { throw Error(ErrorKind::Parse, "cannot parse divisor class '" + text + "'"); };
  if (text == "0") return v;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') sign = text[i++] == '-' ? -1 : 1;
    int coef = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coef = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) coef = coef * 10 + (text[i++] - '0');
    }
    if (i >= text.size()) fail();
    if (text[i] == 'H') {
      ++i;
      v[0] += sign * coef;
    } else if (text[i] == 'Q') {
      ++i;
      int idx = 0;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail();
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) idx = idx * 10 + (text[i++] - '0');
      if (idx < 1 || idx > r) fail();
      v[idx] += sign * coef;
    } else {
      fail();
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// C1 labels

enum class LabelKind : std::uint8_t { Difference, Line, Conic, Cubic };

/// One token of a C1 label: ab, 1abc, 2ab or 30a, possibly negated.
struct LabelElement {
  LabelKind kind = LabelKind::Difference;
  std::array<int, 3> idx{};  // as written
  bool negated = false;

  int arity() const {
    switch (kind) {
      case LabelKind::Difference: return 2;
      case LabelKind::Line: return 3;
      case LabelKind::Conic: return 2;
      case LabelKind::Cubic: return 1;
    }
    return 0;
  }

  std::string token() const {
    std::string s = negated ? "-" : "";
    switch (kind) {
      case LabelKind::Difference: break;
      case LabelKind::Line: s += "1"; break;
      case LabelKind::Conic: s += "2"; break;
      case LabelKind::Cubic: s += "30"; break;
    }
    for (int i = 0; i < arity(); ++i) s += static_cast<char>('0' + idx[i]);
    return s;
  }

  int max_index() const { return *std::max_element(idx.begin(), idx.begin() + arity()); }

  // Index sets are unordered except for the orientation of ab.
  std::array<int, 3> key() const {
    auto k = idx;
    if (kind != LabelKind::Difference) std::sort(k.begin(), k.begin() + arity());
    return k;
  }

  friend bool operator==(const LabelElement& a, const LabelElement& b) {
    return a.kind == b.kind && a.negated == b.negated && a.key() == b.key();
  }
};

inline LabelElement parse_label_element(const std::string& token) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::InvalidLabel, "invalid label element '" + token + "': " + why);
  };
  LabelElement e;
  std::string t = token;
  if (!t.empty() && t[0] == '-') {
    e.negated = true;
    t = t.substr(1);
  }
  for (char c : t)
    if (c < '0' || c > '9') fail("expected digits");
  std::vector<int> digits;
  if (t.size() == 2) {
    e.kind = LabelKind::Difference;
    digits = {t[0] - '0', t[1] - '0'};
  } else if (t.size() == 4 && t[0] == '1') {
    e.kind = LabelKind::Line;
    digits = {t[1] - '0', t[2] - '0', t[3] - '0'};
  } else if (t.size() == 3 && t[0] == '3' && t[1] == '0') {
    e.kind = LabelKind::Cubic;
    digits = {t[2] - '0'};
  } else if (t.size() == 3 && t[0] == '2') {
    e.kind = LabelKind::Conic;
    digits = {t[1] - '0', t[2] - '0'};
  } else {
    fail("unknown shape");
  }
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 1 || digits[i] > kMaxRank) fail("indices must lie in [1..8]");
    for (std::size_t j = 0; j < i; ++j)
      if (digits[i] == digits[j]) fail("indices must be distinct");
    e.idx[i] = digits[i];
  }
  return e;
}

inline bool is_root(const PicardVector& v);

/// phi: label element -> root of R(kit(r)).
inline PicardVector phi(const LabelElement& e, int r) {
  check_kit_rank(r);
  if (e.kind != LabelKind::Conic && e.max_index() > r)
    throw Error(ErrorKind::InvalidLabel, "label element " + e.token() + " exceeds rank");
  auto v = PicardVector::zero(r);
  switch (e.kind) {
    case LabelKind::Difference:
      v[e.idx[0]] = 1;
      v[e.idx[1]] = -1;
      break;
    case LabelKind::Line:
      v[0] = 1;
      for (int i = 0; i < 3; ++i) v[e.idx[i]] = -1;
      break;
    case LabelKind::Conic:
      v[0] = 2;
      for (int i = 1; i <= r; ++i) v[i] = -1;
      for (int k = 0; k < 2; ++k)
        if (e.idx[k] <= r) v[e.idx[k]] = 0;
      if (!is_root(v)) throw Error(ErrorKind::InvalidLabel, "kind 2ab needs exactly six Q indices below the rank");
      break;
    case LabelKind::Cubic:
      if (r != 8) throw Error(ErrorKind::InvalidLabel, "kind 30a requires rank 8");
      v[0] = 3;
      for (int i = 1; i <= 8; ++i) v[i] = -1;
      v[e.idx[0]] = -2;
      break;
  }
  return e.negated ? -v : v;
}

/// (L, r): a set of label elements plus ambient rank.
struct C1Label {
  std::vector<LabelElement> elements;
  int rank = 0;

  bool geometric() const {
    return std::none_of(elements.begin(), elements.end(), [](const LabelElement& e) { return e.negated; });
  }

  std::string tokens() const {
    std::string s;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (i) s += ',';
      s += elements[i].token();
    }
    return s;
  }

  std::string text() const { return tokens() + ";" + std::to_string(rank); }

  std::vector<PicardVector> roots() const {
    std::vector<PicardVector> out;
    for (const auto& e : elements) out.push_back(phi(e, rank));
    return out;
  }
};

/// Inverse of phi on positive roots.
inline LabelElement element_of(const PicardVector& v) {
  if (!is_root(v) || !is_positive(v)) throw Error(ErrorKind::NotARoot, to_string(v) + " is not a positive root");
  int r = v.rank();
  LabelElement e;
  std::vector<int> idx;
  switch (v[0]) {
    case 0:
      e.kind = LabelKind::Difference;
      for (int i = 1; i <= r; ++i)
        if (v[i] == 1) idx.insert(idx.begin(), i);
        else if (v[i] == -1) idx.push_back(i);
      break;
    case 1:
      e.kind = LabelKind::Line;
      for (int i = 1; i <= r; ++i)
        if (v[i] == -1) idx.push_back(i);
      break;
    case 2:
      e.kind = LabelKind::Conic;
      for (int i = 1; i <= 8; ++i)
        if (i > r || v[i] == 0) idx.push_back(i);
      break;
    default:
      e.kind = LabelKind::Cubic;
      for (int i = 1; i <= r; ++i)
        if (v[i] == -2) idx.push_back(i);
  }
  for (std::size_t k = 0; k < idx.size(); ++k) e.idx[k] = idx[k];
  return e;
}

inline C1Label make_label(const std::vector<std::string>& tokens, int r) {
  check_kit_rank(r);
  C1Label L;
  L.rank = r;
  for (const auto& t : tokens) L.elements.push_back(parse_label_element(t));
  std::set<PicardVector> seen;
  for (const auto& e : L.elements) {
    if (!seen.insert(phi(e, r)).second)
      throw Error(ErrorKind::InvalidLabel, "label elements must have distinct images");
  }
  return L;
}

/// Parses "1123,45;5" or "{1123,45};5"; an empty token list is allowed.
inline C1Label parse_label(const std::string& text) {
  auto semi = text.rfind(';');
  if (semi == std::string::npos) throw Error(ErrorKind::Parse, "label needs the form 'tokens;rank'");
  std::string body = text.substr(0, semi);
  std::string rank_text = text.substr(semi + 1);
  body.erase(std::remove_if(body.begin(), body.end(), [](char c) { return c == ' ' || c == '{' || c == '}'; }),
             body.end());
  int r = 0;
  try {
    std::size_t used = 0;
    r = std::stoi(rank_text, &used);
    if (used != rank_text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad rank in label '" + text + "'");
  }
  std::vector<std::string> tokens;
  std::string cur;
  std::istringstream is(body);
  while (std::getline(is, cur, ','))
    if (!cur.empty()) tokens.push_back(cur);
  return make_label(tokens, r);
}

// ---------------------------------------------------------------------------
// Roots

inline PicardVector reflect(const PicardVector& u, const PicardVector& v) {
  if (intersect(u, u) != -2) throw Error(ErrorKind::NotARoot, "reflection requires u.u = -2");
  return v + intersect(u, v) * u;
}

inline bool is_root(const PicardVector& v) {
  return v.kind() == BasisKind::DelPezzo && intersect(v, v) == -2 && intersect(v, canonical_class(v.rank())) == 0;
}

struct CoefficientPattern {
  int min_rank;
  int degree;
  std::vector<int> q;  // nonzero Q coefficients
};

/// All vectors dH + sum a_i Q_i whose Q part is a permutation of the pattern (zero padded).
inline void instantiate_pattern(const CoefficientPattern& p, int r, std::set<PicardVector>& out) {
  if (r < p.min_rank || static_cast<int>(p.q.size()) > r) return;
  std::vector<int> slots(p.q);
  slots.resize(r, 0);
  std::sort(slots.begin(), slots.end());
  do {
    auto v = PicardVector::zero(r);
    v[0] = p.degree;
    for (int i = 0; i < r; ++i) v[i + 1] = slots[i];
    out.insert(v);
  } while (std::next_permutation(slots.begin(), slots.end()));
}

inline const std::vector<CoefficientPattern>& zero_set_patterns() {
  static const std::vector<CoefficientPattern> p = {
      {2, 0, {1, -1}},
      {3, 1, {-1, -1, -1}},
      {6, 2, {-1, -1, -1, -1, -1, -1}},
      {8, 3, {-2, -1, -1, -1, -1, -1, -1, -1}},
  };
  return p;
}

/// Roots from the coefficient table (both signs), sorted by kit order.
inline std::vector<PicardVector> enumerate_roots(int r) {
  check_kit_rank(r);
  std::set<PicardVector> s;
  for (const auto& p : zero_set_patterns()) instantiate_pattern(p, r, s);
  std::vector<PicardVector> out;
  for (const auto& v : s) {
    if (!is_root(v)) throw Error(ErrorKind::NotARoot, "coefficient table produced a non-root");
    out.push_back(v);
    if (v[0] != 0) out.push_back(-v);
  }
  sort_kit(out);
  return out;
}

/// Classes with given (C.k, C.C) by direct search; degree bounded by Cauchy-Schwarz.
inline std::vector<PicardVector> bounded_search(int r, int minus_k_dot, int self) {
  check_kit_rank(r);
  // C = dH - sum a_i Q_i: 3d - sum a_i = t, d^2 - sum a_i^2 = s.
  // sum a_i^2 >= (3d - t)^2 / r gives d^2 - s >= (3d-t)^2/r.
  std::vector<PicardVector> out;
  for (int d = -20; d <= 20; ++d) {
    long lhs = static_cast<long>(r) * (static_cast<long>(d) * d - self);
    long rhs = static_cast<long>(3 * d - minus_k_dot) * (3 * d - minus_k_dot);
    if (lhs < rhs) continue;
    const int budget = d * d - self;  // sum a_i^2
    const int target = 3 * d - minus_k_dot;  // sum a_i
    std::vector<int> a(r, 0);
    std::function<void(int, int, int)> rec = [&](int i, int sum, int sq) {
      int left = r - i;
      long rest_sum = target - sum, rest_sq = budget - sq;
      if (rest_sq < 0 || rest_sum * rest_sum > left * rest_sq) return;
      if (i == r) {
        if (rest_sq != 0) return;
        auto v = PicardVector::zero(r);
        v[0] = d;
        for (int j = 0; j < r; ++j) v[j + 1] = -a[j];
        out.push_back(v);
        return;
      }
      for (int x = -12; x <= 12; ++x) {
        if (x * x > rest_sq) continue;
        a[i] = x;
        rec(i + 1, sum + x, sq + x * x);
      }
    };
    rec(0, 0, 0);
  }
  sort_kit(out);
  return out;
}

inline std::vector<PicardVector> enumerate_roots_bounded(int r) { return bounded_search(r, 0, -2); }

/// Positive members of `system` that are not a sum of two positive members.
inline std::vector<PicardVector> simple_roots(const std::vector<PicardVector>& system) {
  std::vector<PicardVector> pos;
  for (const auto& v : system)
    if (is_positive(v)) pos.push_back(v);
  std::set<PicardVector> posset(pos.begin(), pos.end());
  std::vector<PicardVector> out;
  for (const auto& p : pos) {
    bool dec = false;
    for (const auto& q : pos) {
      if (q == p) continue;
      if (posset.count(p - q)) {
        dec = true;
        break;
      }
    }
    if (!dec) out.push_back(p);
  }
  sort_kit(out);
  return out;
}

}  // namespace delpezzo
