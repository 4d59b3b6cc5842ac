#ifndef PLR_POLY_HPP
#define PLR_POLY_HPP

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "plr/types.hpp"

namespace plr {

using BigInt = BigCount;

/// Polynomial in one variable (printed as n) with exact integer coefficients;
/// coefficients_[k] multiplies n^k.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<BigInt> coefficients) : c_(std::move(coefficients)) { trim(); }

  static UniPoly constant(BigInt v) { return UniPoly({std::move(v)}); }
  static UniPoly variable() { return UniPoly({0, 1}); }
  /// n - a
  static UniPoly linear(long long a) { return UniPoly({BigInt(-a), 1}); }

  /// n (n-1) ... (n-k+1)
  static UniPoly falling(int k) {
    UniPoly p = constant(1);
    for (int i = 0; i < k; ++i) p *= linear(i);
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return c_; }
  BigInt coefficient(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : BigInt(0);
  }

  BigInt eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) { return *this += o * constant(-1); }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(out));
  }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Expanded form, highest degree first: "n^4 - 6n^3 + 11n^2 - 6n".
  std::string to_string(char var = 'n') const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const BigInt& a = c_[k];
      if (a == 0) continue;
      BigInt mag = a < 0 ? BigInt(-a) : a;
      if (first)
        os << (a < 0 ? "-" : "");
      else
        os << (a < 0 ? " - " : " + ");
      if (mag != 1 || k == 0) os << mag;
      if (k >= 1) os << var;
      if (k >= 2) os << '^' << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

/// Polynomial in (r, s, n), stored fully expanded. Zero coefficients are never stored.
class TriPoly {
 public:
  using Exponents = std::array<int, 3>;
  using Terms = std::map<Exponents, BigInt>;

  TriPoly() = default;

  static TriPoly constant(const BigInt& v) { return monomial({0, 0, 0}, v); }
  static TriPoly monomial(Exponents e, const BigInt& coeff = 1) {
    TriPoly p;
    if (coeff != 0) p.terms_[e] = coeff;
    return p;
  }
  static TriPoly var(int k) {
    Exponents e{0, 0, 0};
    e[k] = 1;
    return monomial(e);
  }
  static TriPoly r() { return var(0); }
  static TriPoly s() { return var(1); }
  static TriPoly n() { return var(2); }
  /// (rsn)^k
  static TriPoly rsn_power(int k) { return monomial({k, k, k}); }

  /// A univariate polynomial placed in variable k.
  static TriPoly from_uni(const UniPoly& u, int k) {
    TriPoly p;
    for (int d = 0; d <= u.degree(); ++d) {
      Exponents e{0, 0, 0};
      e[k] = d;
      p.add_term(e, u.coefficient(d));
    }
    return p;
  }

  /// Sum of the distinct monic monomials whose exponent multiset is {a, b, c}.
  static TriPoly bar(int a, int b, int c) {
    Exponents e{a, b, c};
    std::sort(e.begin(), e.end());
    TriPoly p;
    do {
      p.terms_[e] = 1;
    } while (std::next_permutation(e.begin(), e.end()));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BigInt coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  void add_term(const Exponents& e, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  BigInt eval(const BigInt& r, const BigInt& s, const BigInt& n) const {
    BigInt acc = 0;
    for (const auto& [e, c] : terms_) acc += c * pow(r, e[0]) * pow(s, e[1]) * pow(n, e[2]);
    return acc;
  }

  /// Variables permuted: variable k of the result is variable perm[k] of this.
  TriPoly permuted(const std::array<int, 3>& perm) const {
    TriPoly p;
    for (const auto& [e, c] : terms_) p.terms_[{e[perm[0]], e[perm[1]], e[perm[2]]}] = c;
    return p;
  }

  bool is_symmetric() const {
    static const std::array<std::array<int, 3>, 5> perms{
        {{1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}};
    for (const auto& p : perms)
      if (permuted(p) != *this) return false;
    return true;
  }

  /// Every monomial has r, s and n to at least the first power.
  bool divisible_by_rsn() const {
    for (const auto& [e, c] : terms_)
      if (e[0] < 1 || e[1] < 1 || e[2] < 1) return false;
    return true;
  }

  /// Terms of total degree >= d.
  TriPoly degree_at_least(int d) const {
    TriPoly p;
    for (const auto& [e, c] : terms_)
      if (e[0] + e[1] + e[2] >= d) p.terms_[e] = c;
    return p;
  }

  TriPoly& operator+=(const TriPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  TriPoly& operator-=(const TriPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  TriPoly& operator*=(const BigInt& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  friend TriPoly operator+(TriPoly a, const TriPoly& b) { return a += b; }
  friend TriPoly operator-(TriPoly a, const TriPoly& b) { return a -= b; }
  friend TriPoly operator*(TriPoly a, const BigInt& k) { return a *= k; }
  friend TriPoly operator*(const BigInt& k, TriPoly a) { return a *= k; }
  friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    TriPoly p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        p.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return p;
  }
  TriPoly& operator*=(const TriPoly& o) { return *this = *this * o; }
  friend bool operator==(const TriPoly&, const TriPoly&) = default;

  /// Expanded form, e.g. "r^2s^2n^2 - r^2s^2n + 2rsn".
  std::string to_expanded_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponents, BigInt>> items(terms_.begin(), terms_.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      int da = a.first[0] + a.first[1] + a.first[2], db = b.first[0] + b.first[1] + b.first[2];
      if (da != db) return da > db;
      return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : items) {
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      bool constant = e[0] == 0 && e[1] == 0 && e[2] == 0;
      if (mag != 1 || constant) os << mag;
      static const char names[3] = {'r', 's', 'n'};
      for (int k = 0; k < 3; ++k) {
        if (e[k] == 0) continue;
        os << names[k];
        if (e[k] > 1) os << '^' << e[k];
      }
      first = false;
    }
    return os.str();
  }

 private:
  static BigInt pow(const BigInt& x, int k) {
    BigInt p = 1;
    for (int i = 0; i < k; ++i) p *= x;
    return p;
  }

  Terms terms_;
};

/// Symmetric polynomial written as a combination of bar monomials, keyed by the
/// exponent multiset sorted in non-increasing order. Iteration starts at the
/// constant term.
using BarForm = std::map<std::array<int, 3>, BigInt>;

/// Decomposes a symmetric polynomial into bar monomials. Throws if the
/// polynomial is not symmetric.
inline BarForm to_bar_form(const TriPoly& p) {
  if (!p.is_symmetric()) throw InvariantError("bar form requested for a non-symmetric polynomial");
  BarForm out;
  for (const auto& [e, c] : p.terms()) {
    std::array<int, 3> k = e;
    std::sort(k.begin(), k.end(), std::greater<>());
    out.emplace(k, c);
  }
  return out;
}

inline TriPoly from_bar_form(const BarForm& b) {
  TriPoly p;
  for (const auto& [k, c] : b) p += TriPoly::bar(k[0], k[1], k[2]) * c;
  return p;
}

/// Renders e.g. "2 - 100̄" (combining macron after the exponent digits), or
/// "2 - bar(100)" in ascii mode.
inline std::string bar_string(const BarForm& b, bool ascii = false) {
  if (b.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : b) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    bool constant = k[0] == 0 && k[1] == 0 && k[2] == 0;
    if (constant) {
      os << mag;
    } else {
      if (mag != 1) os << mag << ' ';
      std::string digits = std::to_string(k[0]) + std::to_string(k[1]) + std::to_string(k[2]);
      if (ascii)
        os << "bar(" << digits << ')';
      else
        os << digits << "\u0304";
    }
    first = false;
  }
  return os.str();
}

}  // namespace plr

#endif  // PLR_POLY_HPP
