#ifndef PLR_PERMUTATION_HPP
#define PLR_PERMUTATION_HPP

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "plr/types.hpp"

namespace plr {

/// A bijection on {0, ..., t-1}.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(int degree) : images_(static_cast<std::size_t>(degree)) {
    std::iota(images_.begin(), images_.end(), 0);
  }

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || v >= degree() || seen[v]) throw ShapeError("not a permutation");
      seen[v] = 1;
    }
  }

  static Permutation identity(int degree) { return Permutation(degree); }

  /// Cycle notation with 1-based points, e.g. from_cycles(9, {{1,2},{3,4,5},{7,8}}).
  static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(static_cast<std::size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    std::vector<char> used(static_cast<std::size_t>(degree), 0);
    for (const auto& c : cycles) {
      for (std::size_t k = 0; k < c.size(); ++k) {
        int a = c[k] - 1;
        int b = c[(k + 1) % c.size()] - 1;
        if (a < 0 || a >= degree || b < 0 || b >= degree || used[a])
          throw ShapeError("bad cycle notation");
        used[a] = 1;
        img[a] = b;
      }
    }
    return Permutation(std::move(img));
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
  }

  /// (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw ShapeError("permutation degree mismatch");
    std::vector<int> img(a.images_.size());
    for (int i = 0; i < a.degree(); ++i) img[i] = a(b(i));
    return Permutation(std::move(img));
  }

  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(images_.size(), 0);
    for (int i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      std::vector<int> c;
      for (int x = i; !seen[x]; x = images_[x]) {
        seen[x] = 1;
        c.push_back(x);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Multiset of cycle lengths; multiplicities[i] = number of i-cycles.
class CycleStructure {
 public:
  CycleStructure() = default;
  explicit CycleStructure(std::map<int, int> multiplicities) : mult_(std::move(multiplicities)) {
    for (auto it = mult_.begin(); it != mult_.end();) {
      if (it->first < 1 || it->second < 0) throw ShapeError("bad cycle structure");
      it = it->second == 0 ? mult_.erase(it) : std::next(it);
    }
  }

  /// From a partition written as a list of cycle lengths.
  static CycleStructure from_lengths(const std::vector<int>& lengths) {
    std::map<int, int> m;
    for (int l : lengths) ++m[l];
    return CycleStructure(std::move(m));
  }

  const std::map<int, int>& multiplicities() const { return mult_; }
  int count(int length) const {
    auto it = mult_.find(length);
    return it == mult_.end() ? 0 : it->second;
  }

  int degree() const {
    int t = 0;
    for (auto [len, d] : mult_) t += len * d;
    return t;
  }

  /// Lengths in non-increasing order.
  std::vector<int> lengths() const {
    std::vector<int> out;
    for (auto it = mult_.rbegin(); it != mult_.rend(); ++it)
      out.insert(out.end(), static_cast<std::size_t>(it->second), it->first);
    return out;
  }

  /// prod_i d_i! i^{d_i}: the order of the centralizer of any permutation with this structure.
  BigCount centralizer_order() const {
    BigCount c = 1;
    for (auto [len, d] : mult_) {
      c *= factorial(d);
      for (int k = 0; k < d; ++k) c *= len;
    }
    return c;
  }

  /// Cycles laid out in decreasing length over consecutive points.
  Permutation representative() const {
    std::vector<int> img(static_cast<std::size_t>(degree()));
    int start = 0;
    for (int len : lengths()) {
      for (int k = 0; k < len; ++k) img[start + k] = start + (k + 1) % len;
      start += len;
    }
    return Permutation(std::move(img));
  }

  /// "3^1 2^2 1^1"
  std::string to_string() const {
    std::string out;
    for (auto it = mult_.rbegin(); it != mult_.rend(); ++it) {
      if (!out.empty()) out += ' ';
      out += std::to_string(it->first) + '^' + std::to_string(it->second);
    }
    return out;
  }

  friend auto operator<=>(const CycleStructure&, const CycleStructure&) = default;

 private:
  std::map<int, int> mult_;
};

inline CycleStructure cycle_structure(const Permutation& p) {
  std::map<int, int> m;
  for (const auto& c : p.cycles()) ++m[static_cast<int>(c.size())];
  return CycleStructure(std::move(m));
}

/// t! / prod_i (d_i! i^{d_i})
inline BigCount permutations_with_structure(const CycleStructure& z) {
  return exact_div(factorial(z.degree()), z.centralizer_order(), "permutations_with_structure");
}

/// All cycle structures of degree t (integer partitions of t), in reverse
/// lexicographic order of their length lists.
inline std::vector<CycleStructure> cycle_structures(int t) {
  std::vector<CycleStructure> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(CycleStructure::from_lengths(parts));
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  rec(rec, t, t);
  return out;
}

/// Every permutation of degree t, in lexicographic order of images.
inline std::vector<Permutation> all_permutations(int t) {
  std::vector<int> img(static_cast<std::size_t>(t));
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

/// Permutation of the three coordinate roles (row, column, symbol), 0-based.
using Parastrophe = std::array<int, 3>;

inline constexpr Parastrophe kParastropheId{0, 1, 2};
inline constexpr Parastrophe kSwap12{1, 0, 2};
inline constexpr Parastrophe kSwap13{2, 1, 0};
inline constexpr Parastrophe kSwap23{0, 2, 1};
inline constexpr Parastrophe kCycle123{1, 2, 0};
inline constexpr Parastrophe kCycle132{2, 0, 1};

inline std::vector<Parastrophe> all_parastrophes() {
  return {kParastropheId, kSwap12, kSwap13, kSwap23, kCycle123, kCycle132};
}

/// Parastrophes that stabilise the ordered triple (r, s, n).
inline std::vector<Parastrophe> shape_parastrophes(const Shape& sh) {
  std::vector<Parastrophe> out;
  for (const auto& p : all_parastrophes()) {
    bool ok = true;
    for (int k = 0; k < 3; ++k) ok = ok && sh.dim(p[k]) == sh.dim(k);
    if (ok) out.push_back(p);
  }
  return out;
}

struct Isotopism {
  Permutation alpha;  // rows
  Permutation beta;   // columns
  Permutation gamma;  // symbols

  static Isotopism identity(const Shape& sh) {
    return {Permutation(sh.r), Permutation(sh.s), Permutation(sh.n)};
  }
  const Permutation& component(int k) const { return k == 0 ? alpha : (k == 1 ? beta : gamma); }
  friend auto operator<=>(const Isotopism&, const Isotopism&) = default;
};

/// (theta, pi) acting by L -> (L^pi)^theta: the entry (p1,p2,p3) is sent to
/// (theta_1(p_{pi(1)}), theta_2(p_{pi(2)}), theta_3(p_{pi(3)})).
struct Paratopism {
  Isotopism theta;
  Parastrophe pi = kParastropheId;

  static Paratopism identity(const Shape& sh) { return {Isotopism::identity(sh), kParastropheId}; }

  void check(const Shape& sh) const {
    for (int k = 0; k < 3; ++k) {
      if (theta.component(k).degree() != sh.dim(k))
        throw ShapeError("isotopism component degree does not match shape");
      if (sh.dim(pi[k]) != sh.dim(k)) throw ShapeError("parastrophe does not stabilise the shape");
    }
  }

  bool valid_for(const Shape& sh) const {
    try {
      check(sh);
      return true;
    } catch (const ShapeError&) {
      return false;
    }
  }

  Entry apply(const Entry& e) const {
    return {theta.alpha(e[pi[0]]), theta.beta(e[pi[1]]), theta.gamma(e[pi[2]])};
  }

  friend auto operator<=>(const Paratopism&, const Paratopism&) = default;
};

/// The paratopism equal to applying `first` and then `second`.
inline Paratopism then(const Paratopism& first, const Paratopism& second) {
  Parastrophe pi;
  for (int k = 0; k < 3; ++k) pi[k] = first.pi[second.pi[k]];
  auto comp = [&](int k) { return second.theta.component(k) * first.theta.component(second.pi[k]); };
  return {{comp(0), comp(1), comp(2)}, pi};
}

inline Paratopism inverse(const Paratopism& p) {
  // Solve then(p, q) = identity: q.pi = pi^{-1}, q_k = (p_{q.pi(k)})^{-1}.
  Parastrophe inv;
  for (int k = 0; k < 3; ++k) inv[p.pi[k]] = k;
  auto comp = [&](int k) { return p.theta.component(inv[k]).inverse(); };
  return {{comp(0), comp(1), comp(2)}, inv};
}

inline PartialLatinRectangle apply_paratopism(const Paratopism& p, const PartialLatinRectangle& L) {
  p.check(L.shape());
  PartialLatinRectangle out(L.shape());
  for (const auto& e : L.entries()) out.place(p.apply(e));
  return out;
}

inline PartialLatinRectangle apply_isotopism(const Isotopism& t, const PartialLatinRectangle& L) {
  return apply_paratopism({t, kParastropheId}, L);
}

/// Every element of the paratopism group of the shape. Size r! s! n! |S_{r,s,n}|.
inline std::vector<Paratopism> all_paratopisms(const Shape& sh, bool isotopisms_only = false) {
  auto A = all_permutations(sh.r), B = all_permutations(sh.s), C = all_permutations(sh.n);
  std::vector<Parastrophe> pis =
      isotopisms_only ? std::vector<Parastrophe>{kParastropheId} : shape_parastrophes(sh);
  std::vector<Paratopism> out;
  out.reserve(A.size() * B.size() * C.size() * pis.size());
  for (const auto& pi : pis)
    for (const auto& a : A)
      for (const auto& b : B)
        for (const auto& c : C) out.push_back({{a, b, c}, pi});
  return out;
}

}  // namespace plr

#endif  // PLR_PERMUTATION_HPP
