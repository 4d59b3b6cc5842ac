#ifndef PLR_INCEXC_HPP
#define PLR_INCEXC_HPP

// Inclusion-exclusion over clash graphs: P(G) for small isolated-vertex-free
// graphs and the truncated expansion of f_m(r,s,n) = m! #PLR(r,s,n;m).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "plr/canon.hpp"
#include "plr/poly.hpp"
#include "plr/types.hpp"

namespace plr {

inline constexpr int kMaxIncExcVertices = 7;

struct GraphClass {
  ColoredGraph graph;  // canonical representative
  BigCount aut_size = 1;
  int vertices = 0;
  int edges = 0;
  int components = 0;
};

namespace detail {

inline ColoredGraph canonical_graph(const ColoredGraph& g, std::vector<std::uint64_t>* code = nullptr) {
  auto cf = canonical_form(g);
  if (code) *code = cf.code;
  return g.vertex_count() == 0 ? g : g.relabeled(cf.relabeling);
}

inline bool has_isolated_vertex(const ColoredGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!g.neighbors(v)) return true;
  return false;
}

/// All graphs on v vertices up to isomorphism, by adding one edge at a time.
inline std::vector<ColoredGraph> all_graphs(int v) {
  std::vector<ColoredGraph> level{ColoredGraph(v)}, out = level;
  for (int e = 1; e <= v * (v - 1) / 2; ++e) {
    std::unordered_set<std::vector<std::uint64_t>, CodeHash> seen;
    std::vector<ColoredGraph> next;
    for (const auto& g : level)
      for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b) {
          if (g.has_edge(a, b)) continue;
          ColoredGraph h = g;
          h.add_edge(a, b);
          std::vector<std::uint64_t> code;
          auto c = canonical_graph(h, &code);
          if (seen.insert(std::move(code)).second) next.push_back(std::move(c));
        }
    level = std::move(next);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

inline ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
  ColoredGraph g(a.vertex_count() + b.vertex_count());
  for (auto [u, w] : a.edges()) g.add_edge(u, w);
  for (auto [u, w] : b.edges()) g.add_edge(a.vertex_count() + u, a.vertex_count() + w);
  return g;
}

}  // namespace detail

/// One representative per isomorphism class of graphs without isolated
/// vertices, on 0 and 2..max_vertices vertices, ordered by (v, e).
inline std::vector<GraphClass> graphs_no_isolated(int max_vertices) {
  if (max_vertices < 0) throw ShapeError("negative vertex count");
  if (max_vertices > kMaxIncExcVertices) throw SizeLimitError("graph enumeration limited to 7 vertices");
  std::vector<GraphClass> out;
  out.push_back({ColoredGraph(0), 1, 0, 0, 0});
  for (int v = 2; v <= max_vertices; ++v)
    for (auto& g : detail::all_graphs(v)) {
      if (detail::has_isolated_vertex(g)) continue;
      GraphClass c;
      c.aut_size = automorphism_count(g);
      c.vertices = v;
      c.edges = g.edge_count();
      c.components = connected_components(g);
      c.graph = std::move(g);
      out.push_back(std::move(c));
    }
  std::stable_sort(out.begin(), out.end(), [](const GraphClass& a, const GraphClass& b) {
    return std::pair(a.vertices, a.edges) < std::pair(b.vertices, b.edges);
  });
  return out;
}

namespace detail {

/// Frontier state over the three graphs H1, H2, H3: block labels of the active
/// vertices per layer, followed by the number of closed components per layer.
class ColoringDp {
 public:
  explicit ColoringDp(const ColoredGraph& g) : g_(g), v_(g.vertex_count()) {}

  /// (c(H1), c(H2), c(H3)) -> sum over colourings of (-2)^{black edges}.
  std::map<std::array<int, 3>, long long> run() {
    auto edges = g_.edges();
    std::vector<int> last(static_cast<std::size_t>(v_), -1);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      last[edges[i].first] = i;
      last[edges[i].second] = i;
    }
    int isolated = static_cast<int>(std::count(last.begin(), last.end(), -1));
    std::string start(static_cast<std::size_t>(3 * v_ + 3), kInactive);
    start[3 * v_] = start[3 * v_ + 1] = start[3 * v_ + 2] = 0;
    std::unordered_map<std::string, long long> states{{start, 1}};
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      auto [a, b] = edges[i];
      std::unordered_map<std::string, long long> next;
      for (const auto& [key, coeff] : states) {
        std::string base = key;
        activate(base, a);
        activate(base, b);
        for (int colour = 0; colour < 4; ++colour) {
          std::string s = base;
          for (int k = 0; k < 3; ++k)
            if (colour != k) merge(s, k, a, b);
          if (last[a] == i) retire(s, a);
          if (last[b] == i) retire(s, b);
          normalize(s);
          next[s] += colour == 3 ? -2 * coeff : coeff;
        }
      }
      states = std::move(next);
    }
    std::map<std::array<int, 3>, long long> out;
    for (const auto& [key, coeff] : states) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = key[3 * v_ + k] + isolated;
      out[c] += coeff;
    }
    return out;
  }

 private:
  static constexpr char kInactive = static_cast<char>(-1);

  char& label(std::string& s, int k, int x) const { return s[static_cast<std::size_t>(k * v_ + x)]; }

  void activate(std::string& s, int x) const {
    if (label(s, 0, x) != kInactive) return;
    for (int k = 0; k < 3; ++k) label(s, k, x) = static_cast<char>(v_ + x);  // fresh; normalised later
  }

  void merge(std::string& s, int k, int a, int b) const {
    char la = label(s, k, a), lb = label(s, k, b);
    if (la == lb) return;
    for (int x = 0; x < v_; ++x)
      if (label(s, k, x) == lb) label(s, k, x) = la;
  }

  void retire(std::string& s, int x) const {
    for (int k = 0; k < 3; ++k) {
      char l = label(s, k, x);
      label(s, k, x) = kInactive;
      bool shared = false;
      for (int y = 0; y < v_ && !shared; ++y) shared = label(s, k, y) == l;
      if (!shared) ++s[static_cast<std::size_t>(3 * v_ + k)];
    }
  }

  void normalize(std::string& s) const {
    for (int k = 0; k < 3; ++k) {
      std::array<char, 2 * kMaxGraphVertices + 3> map{};
      map.fill(kInactive);
      char fresh = 0;
      for (int x = 0; x < v_; ++x) {
        char& l = label(s, k, x);
        if (l == kInactive) continue;
        auto& m = map[static_cast<unsigned char>(l)];
        if (m == kInactive) m = fresh++;
        l = m;
      }
    }
  }

  const ColoredGraph& g_;
  int v_;
};

}  // namespace detail

/// P(G;r,s,n) = sum over 4-edge-colourings of (-2)^{black} r^{c(H1)-1} s^{c(H2)-1} n^{c(H3)-1},
/// where H_k drops the edges of colour k (red, blue, green) and keeps black edges.
inline TriPoly p_of_g(const ColoredGraph& g) {
  if (g.vertex_count() == 0) throw ShapeError("P(G) needs at least one vertex");
  TriPoly p;
  for (const auto& [c, coeff] : detail::ColoringDp(g).run())
    if (coeff != 0) p.add_term({c[0] - 1, c[1] - 1, c[2] - 1}, BigInt(coeff));
  return p;
}

struct RankedGraph {
  GraphClass cls;
  TriPoly p;
};

/// Every isolated-vertex-free graph with 1 <= v - c(G) <= max_rank, assembled
/// from connected components; P is taken as (rsn)^{c-1} times the product over components.
inline std::vector<RankedGraph> graphs_up_to_rank(int max_rank) {
  if (max_rank < 0) throw ShapeError("negative rank");
  if (max_rank + 1 > kMaxIncExcVertices) throw SizeLimitError("component enumeration limited to 7 vertices");
  std::vector<RankedGraph> connected;
  for (auto& c : graphs_no_isolated(max_rank + 1))
    if (c.components == 1) {
      TriPoly p = p_of_g(c.graph);
      connected.push_back({std::move(c), std::move(p)});
    }
  std::vector<RankedGraph> out;
  std::vector<std::pair<std::size_t, int>> chosen;
  auto emit = [&]() {
    RankedGraph g{{ColoredGraph(0), 1, 0, 0, 0}, TriPoly::constant(1)};
    for (auto [i, k] : chosen) {
      const auto& c = connected[i];
      for (int t = 1; t <= k; ++t) {
        g.cls.graph = detail::disjoint_union(g.cls.graph, c.cls.graph);
        g.cls.aut_size *= c.cls.aut_size * t;
        g.p *= c.p;
        g.cls.vertices += c.cls.vertices;
        g.cls.edges += c.cls.edges;
        ++g.cls.components;
      }
    }
    g.p *= TriPoly::rsn_power(g.cls.components - 1);
    g.cls.graph = detail::canonical_graph(g.cls.graph);
    out.push_back(std::move(g));
  };
  auto rec = [&](auto&& self, std::size_t i, int rank) -> void {
    if (i == connected.size()) {
      if (!chosen.empty()) emit();
      return;
    }
    int r = connected[i].cls.vertices - 1;
    for (int k = 0; rank + k * r <= max_rank; ++k) {
      if (k) chosen.emplace_back(i, k);
      self(self, i + 1, rank + k * r);
      if (k) chosen.pop_back();
    }
  };
  rec(rec, 0, 0);
  std::stable_sort(out.begin(), out.end(), [](const RankedGraph& a, const RankedGraph& b) {
    return std::tuple(a.cls.vertices - a.cls.components, a.cls.vertices, a.cls.edges) <
           std::tuple(b.cls.vertices - b.cls.components, b.cls.vertices, b.cls.edges);
  });
  return out;
}

/// Lowest total degree at which f_m_truncated(m, max_vertices) is exact.
inline int exact_degree_floor(int m, int max_vertices) { return 3 * m - 2 * max_vertices + 1; }

/// T_v = sum over v-vertex G with v - c(G) <= max_vertices - 1 of (-1)^e v!/|Aut(G)| P(G), for v = 2..max_v,
/// so that f_m = (rsn)^m + sum_v C(m,v) (rsn)^{m-v+1} T_v up to the truncation.
inline std::map<int, TriPoly> vertex_blocks(int max_vertices, int max_v, const std::vector<RankedGraph>* graphs = nullptr) {
  if (max_vertices < 2) throw ShapeError("max_vertices must be at least 2");
  std::vector<RankedGraph> local;
  if (!graphs) {
    local = graphs_up_to_rank(max_vertices - 1);
    graphs = &local;
  }
  std::map<int, TriPoly> out;
  for (const auto& g : *graphs) {
    int v = g.cls.vertices;
    if (v > max_v || v - g.cls.components > max_vertices - 1) continue;
    BigInt coeff = exact_div(factorial(v), g.cls.aut_size, "v!/|Aut(G)|");
    if (g.cls.edges % 2) coeff = -coeff;
    out[v] += g.p * coeff;
  }
  return out;
}

/// (rsn)^m + sum over G with v - c(G) <= max_vertices - 1 of
/// C(m,v) (rsn)^{m-v+1} (-1)^e v!/|Aut(G)| P(G). Every monomial of degree at
/// least exact_degree_floor(m, max_vertices) agrees with f_m; the whole
/// polynomial agrees when m <= max_vertices.
inline TriPoly f_m_truncated(int m, int max_vertices, const std::vector<RankedGraph>* graphs = nullptr) {
  if (m < 1) throw ShapeError("m must be positive");
  TriPoly f = TriPoly::rsn_power(m);
  for (const auto& [v, t] : vertex_blocks(max_vertices, m, graphs))
    f += TriPoly::rsn_power(m - v + 1) * t * binomial(m, v);
  return f;
}

}  // namespace plr

#endif  // PLR_INCEXC_HPP
