#ifndef PLR_CANON_HPP
#define PLR_CANON_HPP

// Canonical labelling and automorphism counting for small vertex-coloured
// graphs (at most 64 vertices). Ordered partitions are refined to equitable
// partitions and the individualisation tree is searched for the
// lexicographically least relabelled adjacency code. Automorphisms found as
// code-equal leaves prune the search.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "plr/permutation.hpp"
#include "plr/types.hpp"

namespace plr {

inline constexpr int kMaxGraphVertices = 64;

class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(int vertex_count, std::vector<int> colors = {})
      : n_(vertex_count), colors_(std::move(colors)), adj_(static_cast<std::size_t>(vertex_count)) {
    if (n_ < 0) throw ShapeError("negative vertex count");
    if (n_ > kMaxGraphVertices)
      throw SizeLimitError("graph has " + std::to_string(n_) + " vertices; limit is 64");
    if (colors_.empty()) colors_.assign(static_cast<std::size_t>(n_), 0);
    if (static_cast<int>(colors_.size()) != n_) throw ShapeError("one colour per vertex required");
  }

  int vertex_count() const { return n_; }
  int color(int v) const { return colors_[v]; }
  const std::vector<int>& colors() const { return colors_; }
  std::uint64_t neighbors(int v) const { return adj_[v]; }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ShapeError("edge endpoint out of range");
    if (u == v) throw ShapeError("self-loops are not allowed");
    adj_[u] |= std::uint64_t{1} << v;
    adj_[v] |= std::uint64_t{1} << u;
  }
  void remove_edge(int u, int v) {
    adj_[u] &= ~(std::uint64_t{1} << v);
    adj_[v] &= ~(std::uint64_t{1} << u);
  }
  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1U; }

  int edge_count() const {
    int e = 0;
    for (auto a : adj_) e += std::popcount(a);
    return e / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
  }

  /// Vertex v of this graph becomes vertex sigma(v) of the result.
  ColoredGraph relabeled(const Permutation& sigma) const {
    std::vector<int> cols(colors_.size());
    for (int v = 0; v < n_; ++v) cols[sigma(v)] = colors_[v];
    ColoredGraph g(n_, std::move(cols));
    for (auto [u, v] : edges()) g.add_edge(sigma(u), sigma(v));
    return g;
  }

 private:
  int n_ = 0;
  std::vector<int> colors_;
  std::vector<std::uint64_t> adj_;
};

struct CanonicalForm {
  /// Vertex v of the input sits at canonical position relabeling(v).
  Permutation relabeling;
  /// Vertex count, sorted colour sequence, then adjacency rows in canonical order.
  std::vector<std::uint64_t> code;
};

namespace detail {

using Cells = std::vector<std::uint64_t>;

inline int lowest(std::uint64_t m) { return std::countr_zero(m); }

/// Refines an ordered partition to the coarsest equitable refinement. Only
/// positions of cells (never vertex labels) decide the order of fragments.
inline void refine(const ColoredGraph& g, Cells& cells, std::deque<std::uint64_t> splitters) {
  while (!splitters.empty()) {
    std::uint64_t w = splitters.front();
    splitters.pop_front();
    for (std::size_t x = 0; x < cells.size(); ++x) {
      std::uint64_t cell = cells[x];
      if (std::popcount(cell) == 1) continue;
      int cnt[kMaxGraphVertices + 1];
      int lo = kMaxGraphVertices + 1, hi = -1;
      for (std::uint64_t m = cell; m; m &= m - 1) {
        int v = lowest(m);
        cnt[v] = std::popcount(g.neighbors(v) & w);
        lo = std::min(lo, cnt[v]);
        hi = std::max(hi, cnt[v]);
      }
      if (lo == hi) continue;
      std::vector<std::pair<int, std::uint64_t>> frags;
      for (std::uint64_t m = cell; m; m &= m - 1) {
        int v = lowest(m);
        auto it = std::find_if(frags.begin(), frags.end(), [&](auto& f) { return f.first == cnt[v]; });
        if (it == frags.end())
          frags.emplace_back(cnt[v], std::uint64_t{1} << v);
        else
          it->second |= std::uint64_t{1} << v;
      }
      std::sort(frags.begin(), frags.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(x));
      for (std::size_t k = 0; k < frags.size(); ++k) {
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(x + k), frags[k].second);
        splitters.push_back(frags[k].second);
      }
      x += frags.size() - 1;
    }
  }
}

inline Cells initial_partition(const ColoredGraph& g) {
  std::vector<int> palette(g.colors());
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  Cells cells(palette.size(), 0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto k = std::lower_bound(palette.begin(), palette.end(), g.color(v)) - palette.begin();
    cells[static_cast<std::size_t>(k)] |= std::uint64_t{1} << v;
  }
  std::deque<std::uint64_t> q(cells.begin(), cells.end());
  refine(g, cells, std::move(q));
  return cells;
}

inline Cells individualize(const ColoredGraph& g, const Cells& cells, std::size_t target, int v) {
  Cells out = cells;
  std::uint64_t bit = std::uint64_t{1} << v;
  out[target] &= ~bit;
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(target), bit);
  refine(g, out, std::deque<std::uint64_t>{bit});
  return out;
}

/// First non-singleton cell, or cells.size() if the partition is discrete.
inline std::size_t target_cell(const Cells& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (std::popcount(cells[i]) > 1) return i;
  return cells.size();
}

/// Vertex at each canonical position of a discrete partition.
inline std::vector<int> leaf_labels(const Cells& cells) {
  std::vector<int> lab(cells.size());
  for (std::size_t p = 0; p < cells.size(); ++p) lab[p] = lowest(cells[p]);
  return lab;
}

inline std::vector<std::uint64_t> leaf_code(const ColoredGraph& g, const std::vector<int>& lab) {
  int n = g.vertex_count();
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) pos[lab[p]] = p;
  std::vector<std::uint64_t> code;
  code.reserve(static_cast<std::size_t>(2 * n + 1));
  code.push_back(static_cast<std::uint64_t>(n));
  for (int p = 0; p < n; ++p) code.push_back(static_cast<std::uint64_t>(g.color(lab[p])));
  for (int p = 0; p < n; ++p) {
    std::uint64_t row = 0;
    for (std::uint64_t m = g.neighbors(lab[p]); m; m &= m - 1) row |= std::uint64_t{1} << pos[lowest(m)];
    code.push_back(row);
  }
  return code;
}

/// Shape signature of an equitable partition: cell sizes and the cell-to-cell
/// degrees. Equal for nodes that are images of each other under an automorphism.
inline std::vector<int> node_signature(const ColoredGraph& g, const Cells& cells) {
  std::vector<int> sig;
  sig.reserve(cells.size() * (cells.size() + 1));
  for (auto c : cells) {
    sig.push_back(std::popcount(c));
    std::uint64_t rep = g.neighbors(lowest(c));
    for (auto d : cells) sig.push_back(std::popcount(rep & d));
  }
  return sig;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

/// Automorphisms (as image arrays) that fix every vertex of `path`, merged into orbits.
inline UnionFind stabilizer_orbits(int n, const std::vector<std::vector<int>>& autos,
                                   const std::vector<int>& path) {
  UnionFind uf(n);
  for (const auto& a : autos) {
    bool fixes = std::all_of(path.begin(), path.end(), [&](int v) { return a[v] == v; });
    if (!fixes) continue;
    for (int v = 0; v < n; ++v) uf.unite(v, a[v]);
  }
  return uf;
}

class CanonSearch {
 public:
  explicit CanonSearch(const ColoredGraph& g) : g_(g), n_(g.vertex_count()) {}

  CanonicalForm run() {
    Cells root = initial_partition(g_);
    std::vector<int> path;
    dfs(root, path);
    std::vector<int> rel(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p) rel[best_lab_[p]] = p;
    return {Permutation(std::move(rel)), best_code_};
  }

 private:
  // Returns the depth at which the search resumes.
  int dfs(const Cells& cells, std::vector<int>& path) {
    int depth = static_cast<int>(path.size());
    std::size_t t = target_cell(cells);
    if (t == cells.size()) return leaf(cells, path);
    std::vector<int> explored;
    for (std::uint64_t m = cells[t]; m; m &= m - 1) {
      int w = lowest(m);
      if (!explored.empty() && !autos_.empty()) {
        UnionFind uf = stabilizer_orbits(n_, autos_, path);
        int rw = uf.find(w);
        if (std::any_of(explored.begin(), explored.end(), [&](int u) { return uf.find(u) == rw; }))
          continue;
      }
      explored.push_back(w);
      path.push_back(w);
      int resume = dfs(individualize(g_, cells, t, w), path);
      path.pop_back();
      if (resume < depth) return resume;
    }
    return depth - 1;
  }

  int leaf(const Cells& cells, const std::vector<int>& path) {
    int depth = static_cast<int>(path.size());
    auto lab = leaf_labels(cells);
    auto code = leaf_code(g_, lab);
    if (!have_best_) {
      have_best_ = true;
      best_code_ = first_code_ = code;
      best_lab_ = first_lab_ = lab;
      best_path_ = first_path_ = path;
      return depth - 1;
    }
    if (code == first_code_) return record(first_lab_, lab, first_path_, path);
    if (code < best_code_) {
      best_code_ = std::move(code);
      best_lab_ = std::move(lab);
      best_path_ = path;
      return depth - 1;
    }
    if (code == best_code_) return record(best_lab_, lab, best_path_, path);
    return depth - 1;
  }

  int record(const std::vector<int>& from, const std::vector<int>& to, const std::vector<int>& other,
             const std::vector<int>& path) {
    std::vector<int> a(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p) a[from[p]] = to[p];
    autos_.push_back(std::move(a));
    std::size_t d = 0;
    while (d < other.size() && d < path.size() && other[d] == path[d]) ++d;
    return static_cast<int>(d);
  }

  const ColoredGraph& g_;
  int n_;
  bool have_best_ = false;
  std::vector<std::uint64_t> best_code_, first_code_;
  std::vector<int> best_lab_, first_lab_, best_path_, first_path_;
  std::vector<std::vector<int>> autos_;
};

/// |Aut| as the product of first-path orbit lengths (orbit-stabiliser).
class AutSearch {
 public:
  explicit AutSearch(const ColoredGraph& g) : g_(g), n_(g.vertex_count()) {}

  BigCount run() {
    std::vector<Cells> nodes{initial_partition(g_)};
    std::vector<std::size_t> targets;
    std::vector<int> path;
    for (;;) {
      const Cells& c = nodes.back();
      std::size_t t = target_cell(c);
      if (t == c.size()) break;
      int w = lowest(c[t]);
      targets.push_back(t);
      path.push_back(w);
      signatures_.push_back(node_signature(g_, c));
      nodes.push_back(individualize(g_, c, t, w));
    }
    signatures_.push_back(node_signature(g_, nodes.back()));
    first_lab_ = leaf_labels(nodes.back());
    first_code_ = leaf_code(g_, first_lab_);

    BigCount order = 1;
    for (int k = static_cast<int>(targets.size()) - 1; k >= 0; --k) {
      std::vector<int> prefix(path.begin(), path.begin() + k);
      const Cells& c = nodes[static_cast<std::size_t>(k)];
      std::size_t t = targets[static_cast<std::size_t>(k)];
      int w = path[static_cast<std::size_t>(k)];
      for (std::uint64_t m = c[t]; m; m &= m - 1) {
        int u = lowest(m);
        if (u == w) continue;
        UnionFind uf = stabilizer_orbits(n_, autos_, prefix);
        if (uf.find(u) == uf.find(w)) continue;
        std::vector<int> sub = prefix;
        sub.push_back(u);
        find_equivalent(individualize(g_, c, t, u), sub);
      }
      UnionFind uf = stabilizer_orbits(n_, autos_, prefix);
      int orbit = 0;
      for (std::uint64_t m = c[t]; m; m &= m - 1) orbit += uf.find(lowest(m)) == uf.find(w);
      order *= orbit;
    }
    return order;
  }

 private:
  // Searches the subtree for a leaf with the first leaf's code; records the automorphism.
  bool find_equivalent(const Cells& cells, std::vector<int>& path) {
    std::size_t depth = path.size();
    if (node_signature(g_, cells) != signatures_[depth]) return false;
    std::size_t t = target_cell(cells);
    if (t == cells.size()) {
      auto lab = leaf_labels(cells);
      if (leaf_code(g_, lab) != first_code_) return false;
      std::vector<int> a(static_cast<std::size_t>(n_));
      for (int p = 0; p < n_; ++p) a[first_lab_[p]] = lab[p];
      autos_.push_back(std::move(a));
      return true;
    }
    std::vector<int> explored;
    for (std::uint64_t m = cells[t]; m; m &= m - 1) {
      int x = lowest(m);
      if (!explored.empty()) {
        UnionFind uf = stabilizer_orbits(n_, autos_, path);
        int rx = uf.find(x);
        if (std::any_of(explored.begin(), explored.end(), [&](int u) { return uf.find(u) == rx; }))
          continue;
      }
      explored.push_back(x);
      path.push_back(x);
      bool found = find_equivalent(individualize(g_, cells, t, x), path);
      path.pop_back();
      if (found) return true;
    }
    return false;
  }

  const ColoredGraph& g_;
  int n_;
  std::vector<std::vector<int>> signatures_;
  std::vector<int> first_lab_;
  std::vector<std::uint64_t> first_code_;
  std::vector<std::vector<int>> autos_;
};

}  // namespace detail

/// Deterministic and invariant under colour-preserving relabelling.
inline CanonicalForm canonical_form(const ColoredGraph& g) {
  if (g.vertex_count() == 0) return {Permutation(0), {0}};
  return detail::CanonSearch(g).run();
}

/// Number of colour-preserving automorphisms.
inline BigCount automorphism_count(const ColoredGraph& g) {
  if (g.vertex_count() == 0) return 1;
  return detail::AutSearch(g).run();
}

/// Isolated vertices count as components.
inline int connected_components(const ColoredGraph& g) {
  int n = g.vertex_count();
  std::uint64_t unseen = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  int comps = 0;
  while (unseen) {
    std::uint64_t frontier = unseen & (~unseen + 1);
    std::uint64_t comp = frontier;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t m = frontier; m; m &= m - 1) next |= g.neighbors(std::countr_zero(m));
      frontier = next & ~comp;
      comp |= next;
    }
    unseen &= ~comp;
    ++comps;
  }
  return comps;
}

struct CodeHash {
  std::size_t operator()(const std::vector<std::uint64_t>& code) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : code) {
      h ^= static_cast<std::size_t>(w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace plr

#endif  // PLR_CANON_HPP
