#ifndef PLR_CLASSES_HPP
#define PLR_CLASSES_HPP

// Isomorphism, isotopism and main class counts by Burnside's lemma over
// conjugacy classes of the acting group, and constructive enumeration of the
// classes of weight-m partial Latin rectangles with r, s, n >= m.

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "plr/canon.hpp"
#include "plr/distribution.hpp"
#include "plr/oracle.hpp"
#include "plr/permutation.hpp"

namespace plr {

enum class DeltaKind { identity, swap12, three_cycle };

/// Conjugacy data of a paratopism. identity: (z1, z2, z3) on ([r], [s], [n]);
/// swap12: z2 = structure of alpha*beta on [r], z3 on [n]; three_cycle: z3 on [r].
struct DeltaKey {
  DeltaKind kind = DeltaKind::identity;
  CycleStructure z1, z2, z3;
};

/// Some triple of cycle lengths (i, j, k) from z1, z2, z3 has
/// lcm(i,j) = lcm(i,k) = lcm(j,k) = lcm(i,j,k).
inline bool lcm_feasible(const CycleStructure& z1, const CycleStructure& z2, const CycleStructure& z3) {
  for (int i : z1.lengths())
    for (int j : z2.lengths())
      for (int k : z3.lengths()) {
        long long l = std::lcm(std::lcm(i, j), k);
        if (std::lcm(i, j) == l && std::lcm(i, k) == l && std::lcm(j, k) == l) return true;
      }
  return false;
}

/// The representative paratopism used for a key.
inline Paratopism delta_representative(const DeltaKey& key, const Shape& sh) {
  switch (key.kind) {
    case DeltaKind::identity:
      if (key.z1.degree() != sh.r || key.z2.degree() != sh.s || key.z3.degree() != sh.n)
        throw ShapeError("cycle structures do not match the shape");
      return {{key.z1.representative(), key.z2.representative(), key.z3.representative()}, kParastropheId};
    case DeltaKind::swap12:
      if (sh.r != sh.s) throw ShapeError("swap12 needs r = s");
      if (key.z2.degree() != sh.r || key.z3.degree() != sh.n)
        throw ShapeError("cycle structures do not match the shape");
      return {{Permutation(sh.r), key.z2.representative(), key.z3.representative()}, kSwap12};
    case DeltaKind::three_cycle:
      if (sh.r != sh.s || sh.s != sh.n) throw ShapeError("three_cycle needs r = s = n");
      if (key.z3.degree() != sh.r) throw ShapeError("cycle structure does not match the shape");
      return {{Permutation(sh.r), Permutation(sh.r), key.z3.representative()}, kCycle123};
  }
  throw ShapeError("unknown delta kind");
}

/// Number of partial Latin rectangles of each weight fixed by any paratopism with the key's conjugacy data.
inline WeightDistribution delta(const DeltaKey& key, const Shape& sh) {
  auto p = delta_representative(key, sh);
  if (key.kind == DeltaKind::identity && !lcm_feasible(key.z1, key.z2, key.z3))
    return WeightDistribution::empty_only(sh);
  return count_fixed_by(p, sh);
}

namespace detail {

/// Sum of weights[i] * d_i, divided exactly by `denominator`.
inline WeightDistribution burnside_quotient(const Shape& sh, const std::vector<BigCount>& numerators,
                                            const BigCount& denominator) {
  WeightDistribution out(sh);
  for (int m = 0; m <= sh.cells(); ++m) out[m] = exact_div(numerators[m], denominator, "class count");
  return out;
}

inline void accumulate(std::vector<BigCount>& acc, const WeightDistribution& d, const BigCount& mult) {
  for (int m = 0; m <= d.max_weight(); ++m) acc[m] += d[m] * mult;
}

/// Sum over the isotopism group of fixed-point counts, grouped by conjugacy class.
inline std::vector<BigCount> isotopism_fixed_sum(const Shape& sh) {
  std::vector<BigCount> acc(static_cast<std::size_t>(sh.cells() + 1));
  auto group = factorial(sh.r) * factorial(sh.s) * factorial(sh.n);
  for (const auto& z1 : cycle_structures(sh.r))
    for (const auto& z2 : cycle_structures(sh.s))
      for (const auto& z3 : cycle_structures(sh.n)) {
        BigCount size = group / (z1.centralizer_order() * z2.centralizer_order() * z3.centralizer_order());
        accumulate(acc, delta({DeltaKind::identity, z1, z2, z3}, sh), size);
      }
  return acc;
}

}  // namespace detail

/// #Isom(n;m) for every m.
inline WeightDistribution isom_count(int n) {
  Shape sh(n, n, n);
  std::vector<BigCount> acc(static_cast<std::size_t>(sh.cells() + 1));
  for (const auto& z : cycle_structures(n)) {
    Permutation g = z.representative();
    auto d = count_fixed_by({{g, g, g}, kParastropheId}, sh);
    detail::accumulate(acc, d, factorial(n) / z.centralizer_order());
  }
  return detail::burnside_quotient(sh, acc, factorial(n));
}

/// #Isot(r,s,n;m) for every m.
inline WeightDistribution isot_count(const Shape& sh) {
  return detail::burnside_quotient(sh, detail::isotopism_fixed_sum(sh),
                                   factorial(sh.r) * factorial(sh.s) * factorial(sh.n));
}

/// #MC(r,s,n;m) for every m. Any dimension order is accepted; when exactly two
/// dimensions agree the computation runs on the parastrophe with the equal pair first.
inline WeightDistribution mc_count(const Shape& shape) {
  Shape sh = shape;
  if (sh.r != sh.s) {
    if (sh.r == sh.n) sh = Shape(sh.r, sh.n, sh.s);
    else if (sh.s == sh.n) sh = Shape(sh.s, sh.n, sh.r);
  }
  BigCount iso_group = factorial(sh.r) * factorial(sh.s) * factorial(sh.n);
  auto acc = detail::isotopism_fixed_sum(sh);
  int parastrophes = 1;
  if (sh.r == sh.s) {
    parastrophes = sh.s == sh.n ? 6 : 2;
    int transpositions = sh.s == sh.n ? 3 : 1;
    // |{(alpha, beta): alpha*beta in z2}| = r! * r!/c(z2); gamma in z3: n!/c(z3).
    for (const auto& z2 : cycle_structures(sh.r))
      for (const auto& z3 : cycle_structures(sh.n)) {
        BigCount elements = factorial(sh.r) * (factorial(sh.r) / z2.centralizer_order()) *
                            (factorial(sh.n) / z3.centralizer_order()) * transpositions;
        detail::accumulate(acc, delta({DeltaKind::swap12, {}, z2, z3}, sh), elements);
      }
    if (sh.s == sh.n)
      for (const auto& z3 : cycle_structures(sh.r)) {
        BigCount elements = 2 * factorial(sh.r) * factorial(sh.r) * (factorial(sh.r) / z3.centralizer_order());
        detail::accumulate(acc, delta({DeltaKind::three_cycle, {}, {}, z3}, sh), elements);
      }
  }
  auto out = detail::burnside_quotient(sh, acc, iso_group * parastrophes);
  WeightDistribution result(shape);
  for (int m = 0; m <= std::min(result.max_weight(), out.max_weight()); ++m) result[m] = out[m];
  return result;
}

enum class ClassKind { isotopism, main };

/// Vertex-coloured incidence graph of a set of entries on `rows` x `cols` x
/// `symbols` points: one vertex per row, column, symbol and entry, plus three
/// role vertices joined to every row, every column and every symbol.
inline ColoredGraph incidence_graph(const std::vector<Entry>& entries, int rows, int cols, int symbols,
                                    ClassKind kind) {
  int base[3] = {0, rows, rows + cols};
  int points = rows + cols + symbols;
  int m = static_cast<int>(entries.size());
  std::vector<int> colours(static_cast<std::size_t>(points + m + 3));
  for (int k = 0; k < 3; ++k) {
    int c = kind == ClassKind::isotopism ? k : 0;
    for (int x = 0; x < (k == 0 ? rows : k == 1 ? cols : symbols); ++x) colours[base[k] + x] = c;
    colours[points + m + k] = kind == ClassKind::isotopism ? 5 + k : 5;
  }
  for (int e = 0; e < m; ++e) colours[points + e] = 4;
  ColoredGraph g(points + m + 3, colours);
  for (int e = 0; e < m; ++e)
    for (int k = 0; k < 3; ++k) g.add_edge(points + e, base[k] + entries[e][k]);
  for (int k = 0; k < 3; ++k)
    for (int x = 0; x < (k == 0 ? rows : k == 1 ? cols : symbols); ++x) g.add_edge(points + m + k, base[k] + x);
  return g;
}

/// A weight-m partial Latin rectangle on exactly the rows, columns and symbols it uses.
struct CompactPlr {
  std::vector<Entry> entries;
  int rows = 0, cols = 0, symbols = 0;
};

/// Class representatives of weight 0..max_m with unbounded r, s, n, each level
/// grown from the previous one by adding an entry in an existing or new row,
/// column and symbol. `progress(m, count)` is called after each level.
inline std::vector<std::vector<CompactPlr>> unbounded_class_levels(
    int max_m, ClassKind kind, const std::function<void(int, std::size_t)>& progress = {}) {
  if (max_m < 0) throw ShapeError("negative weight");
  if (max_m > 12) throw SizeLimitError("unbounded class enumeration limited to m <= 12");
  std::vector<std::vector<CompactPlr>> levels{{CompactPlr{}}};
  for (int m = 1; m <= max_m; ++m) {
    std::unordered_set<std::vector<std::uint64_t>, CodeHash> seen;
    std::vector<CompactPlr> next;
    for (const auto& P : levels.back()) {
      std::vector<std::uint64_t> row_used(static_cast<std::size_t>(P.rows + 1), 0),
          col_used(static_cast<std::size_t>(P.cols + 1), 0);
      std::vector<char> filled(static_cast<std::size_t>((P.rows + 1) * (P.cols + 1)), 0);
      for (const auto& e : P.entries) {
        row_used[e.row] |= std::uint64_t{1} << e.symbol;
        col_used[e.col] |= std::uint64_t{1} << e.symbol;
        filled[e.row * (P.cols + 1) + e.col] = 1;
      }
      for (int i = 0; i <= P.rows; ++i)
        for (int j = 0; j <= P.cols; ++j) {
          if (filled[i * (P.cols + 1) + j]) continue;
          for (int k = 0; k <= P.symbols; ++k) {
            if (((row_used[i] | col_used[j]) >> k) & 1U) continue;
            CompactPlr Q{P.entries, P.rows + (i == P.rows), P.cols + (j == P.cols), P.symbols + (k == P.symbols)};
            Q.entries.push_back({i, j, k});
            auto code = canonical_form(incidence_graph(Q.entries, Q.rows, Q.cols, Q.symbols, kind)).code;
            if (seen.insert(std::move(code)).second) next.push_back(std::move(Q));
          }
        }
    }
    levels.push_back(std::move(next));
    if (progress) progress(m, levels.back().size());
  }
  return levels;
}

/// Number of isotopism or main classes of weight m = 0..max_m when r, s, n >= m.
inline std::vector<BigCount> unbounded_class_counts(int max_m, ClassKind kind,
                                                    const std::function<void(int, std::size_t)>& progress = {}) {
  std::vector<BigCount> out;
  for (const auto& level : unbounded_class_levels(max_m, kind, progress)) out.emplace_back(level.size());
  return out;
}

}  // namespace plr

#endif  // PLR_CLASSES_HPP
