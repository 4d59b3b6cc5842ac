#ifndef PLR_ORACLE_HPP
#define PLR_ORACLE_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <tuple>
#include <vector>

#include "plr/distribution.hpp"
#include "plr/permutation.hpp"
#include "plr/types.hpp"

namespace plr {

namespace detail {

inline void require_bitmask_shape(const Shape& sh) {
  if (sh.n > 32 || sh.s > 32 || sh.r > 32 || sh.cells() > 64)
    throw SizeLimitError("shape exceeds the bitmask limits (r,s,n <= 32, rs <= 64)");
}

inline std::vector<BigCount> to_big(const std::vector<std::uint64_t>& v) {
  return {v.begin(), v.end()};
}

/// Weight histogram of all partial injective fillings of one row whose cell j
/// may take any symbol in allowed[j].
inline void last_row_histogram(const std::vector<std::uint32_t>& allowed, int n,
                               std::vector<std::uint64_t>& dp, std::vector<std::uint64_t>& next,
                               std::uint64_t* out) {
  std::size_t states = std::size_t{1} << n;
  std::fill(dp.begin(), dp.begin() + static_cast<std::ptrdiff_t>(states), 0);
  std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(states), 0);
  dp[0] = 1;
  std::uint32_t reach = 0;
  for (auto a : allowed) {
    for (std::uint32_t used = reach;; used = (used - 1) & reach) {
      next[used] = dp[used];
      if (used == 0) break;
    }
    for (std::uint32_t used = reach;; used = (used - 1) & reach) {
      if (std::uint64_t c = dp[used]) {
        for (std::uint32_t free = a & ~used; free; free &= free - 1)
          next[used | (free & (~free + 1))] += c;
      }
      if (used == 0) break;
    }
    std::swap(dp, next);
    reach |= a;
  }
  for (std::uint32_t used = reach;; used = (used - 1) & reach) {
    out[std::popcount(used)] += dp[used];
    if (used == 0) break;
  }
}

class PlainCounter {
 public:
  explicit PlainCounter(const Shape& sh)
      : sh_(sh), hist_(static_cast<std::size_t>(sh.cells() + 1)), row_(static_cast<std::size_t>(sh.r)),
        col_(static_cast<std::size_t>(sh.s)) {
    full_ = sh.n == 32 ? ~0U : ((1U << sh.n) - 1);
    use_dp_ = sh.n <= 16;
    if (use_dp_) {
      dp_.resize(std::size_t{1} << sh.n);
      next_.resize(std::size_t{1} << sh.n);
      allowed_.resize(static_cast<std::size_t>(sh.s));
    }
  }

  std::vector<std::uint64_t> run() {
    cell(0, 0);
    return hist_;
  }

 private:
  void cell(int c, int w) {
    int i = c / sh_.s, j = c % sh_.s;
    if (use_dp_ && j == 0 && i == sh_.r - 1) {
      for (int k = 0; k < sh_.s; ++k) allowed_[k] = full_ & ~col_[k];
      last_row_histogram(allowed_, sh_.n, dp_, next_, hist_.data() + w);
      return;
    }
    if (c == sh_.cells()) {
      ++hist_[w];
      return;
    }
    cell(c + 1, w);
    for (std::uint32_t free = full_ & ~row_[i] & ~col_[j]; free; free &= free - 1) {
      std::uint32_t b = free & (~free + 1);
      row_[i] |= b;
      col_[j] |= b;
      cell(c + 1, w + 1);
      row_[i] &= ~b;
      col_[j] &= ~b;
    }
  }

  Shape sh_;
  std::vector<std::uint64_t> hist_;
  std::vector<std::uint32_t> row_, col_;
  std::uint32_t full_ = 0;
  bool use_dp_ = false;
  std::vector<std::uint64_t> dp_, next_;
  std::vector<std::uint32_t> allowed_;
};

}  // namespace detail

/// counts[m] = #PLR(r,s,n;m). Row-major backtracking with row and column
/// symbol masks; the final row is counted in closed form by a DP over used symbols.
inline WeightDistribution count_all(const Shape& shape) {
  detail::require_bitmask_shape(shape);
  return WeightDistribution(shape, detail::to_big(detail::PlainCounter(shape).run()));
}

namespace detail {

struct TripleOrbit {
  std::vector<Entry> triples;
  std::uint64_t cells = 0;
  int min_cell = 0;
};

/// Orbits of the triple space under the paratopism, with internally clashing
/// orbits dropped.
inline std::vector<TripleOrbit> feasible_orbits(const Paratopism& p, const Shape& sh) {
  int total = sh.r * sh.s * sh.n;
  auto index = [&](const Entry& e) { return (e.row * sh.s + e.col) * sh.n + e.symbol; };
  std::vector<char> seen(static_cast<std::size_t>(total), 0);
  std::vector<TripleOrbit> out;
  for (int t = 0; t < total; ++t) {
    if (seen[t]) continue;
    TripleOrbit o;
    Entry e{t / sh.n / sh.s, (t / sh.n) % sh.s, t % sh.n};
    while (!seen[index(e)]) {
      seen[index(e)] = 1;
      o.triples.push_back(e);
      e = p.apply(e);
    }
    bool clash = false;
    for (std::size_t a = 0; a < o.triples.size() && !clash; ++a)
      for (std::size_t b = a + 1; b < o.triples.size() && !clash; ++b) {
        const Entry &x = o.triples[a], &y = o.triples[b];
        int shared = (x.row == y.row) + (x.col == y.col) + (x.symbol == y.symbol);
        clash = shared >= 2;
      }
    if (clash) continue;
    o.min_cell = sh.cells();
    for (const auto& x : o.triples) {
      int c = x.row * sh.s + x.col;
      o.cells |= std::uint64_t{1} << c;
      o.min_cell = std::min(o.min_cell, c);
    }
    out.push_back(std::move(o));
  }
  return out;
}

class FixedCounter {
 public:
  FixedCounter(const Paratopism& p, const Shape& sh)
      : sh_(sh), hist_(static_cast<std::size_t>(sh.cells() + 1)), row_(static_cast<std::size_t>(sh.r)),
        col_(static_cast<std::size_t>(sh.s)), by_cell_(static_cast<std::size_t>(sh.cells())) {
    orbits_ = feasible_orbits(p, sh);
    for (std::size_t k = 0; k < orbits_.size(); ++k) by_cell_[orbits_[k].min_cell].push_back(k);
  }

  std::vector<std::uint64_t> run() {
    cell(0, 0);
    return hist_;
  }

 private:
  bool fits(const TripleOrbit& o) const {
    if (o.cells & decided_) return false;
    for (const auto& e : o.triples)
      if (((row_[e.row] | col_[e.col]) >> e.symbol) & 1U) return false;
    return true;
  }

  void cell(int c, int w) {
    while (c < sh_.cells() && ((decided_ >> c) & 1U)) ++c;
    if (c == sh_.cells()) {
      ++hist_[w];
      return;
    }
    std::uint64_t bit = std::uint64_t{1} << c;
    decided_ |= bit;
    cell(c + 1, w);
    decided_ &= ~bit;
    for (std::size_t k : by_cell_[c]) {
      const TripleOrbit& o = orbits_[k];
      if (!fits(o)) continue;
      decided_ |= o.cells;
      for (const auto& e : o.triples) {
        row_[e.row] |= 1U << e.symbol;
        col_[e.col] |= 1U << e.symbol;
      }
      cell(c + 1, w + static_cast<int>(o.triples.size()));
      decided_ &= ~o.cells;
      for (const auto& e : o.triples) {
        row_[e.row] &= ~(1U << e.symbol);
        col_[e.col] &= ~(1U << e.symbol);
      }
    }
  }

  Shape sh_;
  std::vector<std::uint64_t> hist_;
  std::vector<std::uint32_t> row_, col_;
  std::uint64_t decided_ = 0;
  std::vector<TripleOrbit> orbits_;
  std::vector<std::vector<std::size_t>> by_cell_;
};

}  // namespace detail

/// counts[m] = number of weight-m PLRs L with L^p = L. The triple space is
/// split into orbits of p; fixed PLRs are exactly the clash-free unions of orbits.
inline WeightDistribution count_fixed_by(const Paratopism& p, const Shape& shape) {
  p.check(shape);
  detail::require_bitmask_shape(shape);
  bool identity = p.pi == kParastropheId && p.theta.alpha.is_identity() && p.theta.beta.is_identity() &&
                  p.theta.gamma.is_identity();
  if (identity) return count_all(shape);
  return WeightDistribution(shape, detail::to_big(detail::FixedCounter(p, shape).run()));
}

namespace detail {

inline BigCount brute_isotopisms(const PLR& P, const PLR& Q) {
  const Shape& sh = P.shape();
  auto A = all_permutations(sh.r), B = all_permutations(sh.s), C = all_permutations(sh.n);
  auto entries = P.entries();
  BigCount total = 0;
  for (const auto& a : A)
    for (const auto& b : B)
      for (const auto& c : C) {
        bool ok = true;
        for (const auto& e : entries) {
          if (Q.raw(a(e.row), b(e.col)) != c(e.symbol) + 1) {
            ok = false;
            break;
          }
        }
        total += ok;
      }
  return total;
}

class IsotopismSearch {
 public:
  IsotopismSearch(const PLR& P, const PLR& Q) : P_(P), Q_(Q), sh_(P.shape()) {
    by_row_.resize(static_cast<std::size_t>(sh_.r));
    for (const auto& e : P.entries()) by_row_[e.row].push_back(e);
    alpha_used_.assign(static_cast<std::size_t>(sh_.r), 0);
    beta_.assign(static_cast<std::size_t>(sh_.s), -1);
    beta_inv_.assign(static_cast<std::size_t>(sh_.s), -1);
    gamma_.assign(static_cast<std::size_t>(sh_.n), -1);
    gamma_inv_.assign(static_cast<std::size_t>(sh_.n), -1);
  }

  BigCount run() {
    row(0);
    return total_;
  }

 private:
  void row(int i) {
    if (i == sh_.r) {
      int fb = static_cast<int>(std::count(beta_.begin(), beta_.end(), -1));
      int fg = static_cast<int>(std::count(gamma_.begin(), gamma_.end(), -1));
      total_ += factorial(fb) * factorial(fg);
      return;
    }
    for (int a = 0; a < sh_.r; ++a) {
      if (alpha_used_[a]) continue;
      alpha_used_[a] = 1;
      entry(i, a, 0);
      alpha_used_[a] = 0;
    }
  }

  // Matches the k-th entry of P's row i inside row a of Q.
  void entry(int i, int a, std::size_t k) {
    if (k == by_row_[i].size()) {
      row(i + 1);
      return;
    }
    const Entry& e = by_row_[i][k];
    auto try_column = [&](int c) {
      int q = Q_.raw(a, c);
      if (q == 0) return;
      int sym = q - 1;
      bool set_g = false;
      if (gamma_[e.symbol] == -1) {
        if (gamma_inv_[sym] != -1) return;
        gamma_[e.symbol] = sym;
        gamma_inv_[sym] = e.symbol;
        set_g = true;
      } else if (gamma_[e.symbol] != sym) {
        return;
      }
      entry(i, a, k + 1);
      if (set_g) {
        gamma_[e.symbol] = -1;
        gamma_inv_[sym] = -1;
      }
    };
    if (beta_[e.col] != -1) {
      try_column(beta_[e.col]);
      return;
    }
    for (int c = 0; c < sh_.s; ++c) {
      if (beta_inv_[c] != -1) continue;
      beta_[e.col] = c;
      beta_inv_[c] = e.col;
      try_column(c);
      beta_[e.col] = -1;
      beta_inv_[c] = -1;
    }
  }

  const PLR& P_;
  const PLR& Q_;
  Shape sh_;
  std::vector<std::vector<Entry>> by_row_;
  std::vector<char> alpha_used_;
  std::vector<int> beta_, beta_inv_, gamma_, gamma_inv_;
  BigCount total_ = 0;
};

}  // namespace detail

enum class IsotopismMethod { automatic, brute_force, propagation };

/// #{Theta in S_r x S_s x S_n : P^Theta = Q}.
inline BigCount count_isotopisms(const PLR& P, const PLR& Q,
                                 IsotopismMethod method = IsotopismMethod::automatic) {
  if (!(P.shape() == Q.shape())) throw ShapeError("isotopism count needs equal shapes");
  if (P.weight() != Q.weight()) return 0;
  const Shape& sh = P.shape();
  if (method == IsotopismMethod::automatic)
    method = factorial(sh.r) * factorial(sh.s) * factorial(sh.n) <= 1000000 ? IsotopismMethod::brute_force
                                                                          : IsotopismMethod::propagation;
  if (method == IsotopismMethod::brute_force) return detail::brute_isotopisms(P, Q);
  return detail::IsotopismSearch(P, Q).run();
}

struct ClassSizes {
  BigCount isotopism_class_size;
  BigCount main_class_size;
  BigCount isot_classes_in_main;
};

/// Orbit sizes of P under the isotopism and paratopism groups of its shape.
inline ClassSizes class_sizes(const PLR& P) {
  const Shape& sh = P.shape();
  BigCount group = factorial(sh.r) * factorial(sh.s) * factorial(sh.n);
  BigCount autotopisms = count_isotopisms(P, P);
  auto pis = shape_parastrophes(sh);
  BigCount autoparatopisms = 0;
  for (const auto& pi : pis) {
    PLR Pp = apply_paratopism({Isotopism::identity(sh), pi}, P);
    autoparatopisms += count_isotopisms(Pp, P);
  }
  BigCount npi = static_cast<long>(pis.size());
  return {exact_div(group, autotopisms, "isotopism class size"),
          exact_div(npi * group, autoparatopisms, "main class size"),
          exact_div(npi * autotopisms, autoparatopisms, "isotopism classes in main class")};
}

}  // namespace plr

#endif  // PLR_ORACLE_HPP
