#ifndef PLR_VERIFY_HPP
#define PLR_VERIFY_HPP

// Consistency checks on computed counts: the congruences between shapes that
// differ in one dimension, agreement of independent counting methods, and
// invariance of counts under permuting the three dimensions.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plr/chromatic.hpp"
#include "plr/distribution.hpp"
#include "plr/oracle.hpp"
#include "plr/sade.hpp"

namespace plr {

enum class CheckStatus { pass, fail, skipped };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "SKIPPED";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

/// Supplies #PLR(r,s,n;m) for a shape, or nothing when it cannot be obtained.
using CountSource = std::function<std::optional<WeightDistribution>(const Shape&)>;

enum class CountMethod { oracle, sade, blocks };

inline const char* method_name(CountMethod m) {
  switch (m) {
    case CountMethod::oracle: return "oracle";
    case CountMethod::sade: return "sade";
    case CountMethod::blocks: return "blocks";
  }
  return "?";
}

/// Whether a method runs at desk scale for a shape.
inline bool method_feasible(CountMethod method, const Shape& sh) {
  int a = sh.r, b = sh.s, c = sh.n;
  switch (method) {
    case CountMethod::oracle: return a * b <= 20 && a <= 5 && b <= 5 && c <= 5 && a * b * c <= 80;
    case CountMethod::sade: {
      Shape o = orient_shape(sh);
      return o.s * o.n <= 64 && o.n <= 20;
    }
    case CountMethod::blocks: return sh.r * sh.s <= 16;
  }
  return false;
}

/// Name of the method limiting a shape, for refusal messages.
inline std::string infeasible_reason(CountMethod method, const Shape& sh) {
  std::ostringstream os;
  os << "module " << method_name(method) << " does not handle shape " << sh << " at desk scale";
  return os.str();
}

inline WeightDistribution count_with(CountMethod method, const Shape& sh, int plain_tail_rows = 1,
                                     const std::vector<Block>* blocks = nullptr) {
  switch (method) {
    case CountMethod::oracle: return count_all(sh);
    case CountMethod::sade: {
      SadeOptions opt;
      opt.plain_tail_rows = plain_tail_rows;
      return sade_count(sh, opt);
    }
    case CountMethod::blocks: {
      WeightDistribution d(sh);
      std::vector<Block> local;
      if (!blocks) {
        local = generate_blocks(sh.cells(), std::max(sh.r, sh.s));
        blocks = &local;
      }
      for (int m = 0; m <= sh.cells(); ++m) d[m] = count_via_blocks(sh, m, blocks);
      return d;
    }
  }
  throw ShapeError("unknown method");
}

/// Counts from the cheapest feasible method; dimension 0 gives the distribution 1, 0, 0, ...
inline std::optional<WeightDistribution> default_count(int r, int s, int n, int max_weight) {
  WeightDistribution out(Shape(1, std::max(1, max_weight), 1));
  if (r == 0 || s == 0 || n == 0) {
    out[0] = 1;
    return out;
  }
  Shape sh(r, s, n);
  std::optional<WeightDistribution> d;
  if (method_feasible(CountMethod::sade, sh)) d = count_with(CountMethod::sade, sh);
  else if (method_feasible(CountMethod::oracle, sh)) d = count_with(CountMethod::oracle, sh);
  if (!d) return std::nullopt;
  for (int m = 0; m <= out.max_weight(); ++m) out[m] = d->at(m);
  return out;
}

/// The congruences #PLR(r,s,n;m) = #PLR(r',s',n';m) mod (d - k), where one
/// dimension d is replaced by k < d. `k` limits the check to one value; by
/// default every k in 0..d-1 is used. `source(r, s, n, w)` returns counts for
/// weights 0..w with any dimension allowed to be 0.
using PaddedSource = std::function<std::optional<WeightDistribution>(int, int, int, int)>;

inline std::vector<CheckResult> divisibility_checks(const Shape& sh, const PaddedSource& source,
                                                    std::optional<int> only_k = std::nullopt) {
  std::vector<CheckResult> out;
  int w = sh.cells();
  auto base = source(sh.r, sh.s, sh.n, w);
  static const char* names[3] = {"r", "s", "n"};
  for (int dim = 0; dim < 3; ++dim) {
    int d = sh.dim(dim);
    for (int k = 0; k < d; ++k) {
      if (only_k && *only_k != k) continue;
      std::array<int, 3> other{sh.r, sh.s, sh.n};
      other[dim] = k;
      std::ostringstream name;
      name << "congruence " << sh << " vs " << other[0] << '.' << other[1] << '.' << other[2] << " mod " << d - k
           << " (" << names[dim] << ')';
      CheckResult res{name.str(), CheckStatus::pass, ""};
      auto cmp = source(other[0], other[1], other[2], w);
      if (!base || !cmp) {
        res.status = CheckStatus::skipped;
        res.detail = "counts unavailable";
      } else {
        BigCount mod = d - k;
        for (int m = 0; m <= w; ++m) {
          BigInt diff = BigInt(base->at(m)) - BigInt(cmp->at(m));
          if (diff % BigInt(mod) != 0) {
            res.status = CheckStatus::fail;
            res.detail += "m=" + std::to_string(m) + " ";
          }
        }
      }
      out.push_back(std::move(res));
    }
  }
  return out;
}

/// Congruences on #PLR(r,s,n;m) = f_m(r,s,n)/m! for k in 1..max_k and each of
/// r, s, n in k+1..k+span. Returns the number of violations; non-integral
/// quotients count as violations.
inline long long polynomial_divisibility_violations(const TriPoly& f_m, int m, int max_k, int span) {
  BigInt mf = BigInt(factorial(m));
  auto plr_count = [&](int r, int s, int n) -> std::optional<BigInt> {
    BigInt v = f_m.eval(r, s, n);
    if (v % mf != 0) return std::nullopt;
    return v / mf;
  };
  long long violations = 0;
  for (int k = 1; k <= max_k; ++k)
    for (int r = k + 1; r <= k + span; ++r)
      for (int s = k + 1; s <= k + span; ++s)
        for (int n = k + 1; n <= k + span; ++n) {
          auto base = plr_count(r, s, n);
          auto cr = plr_count(k, s, n), cs = plr_count(r, k, n), cn = plr_count(r, s, k);
          if (!base || !cr || !cs || !cn) {
            ++violations;
            continue;
          }
          if ((*base - *cr) % (r - k) != 0) ++violations;
          if ((*base - *cs) % (s - k) != 0) ++violations;
          if ((*base - *cn) % (n - k) != 0) ++violations;
        }
  return violations;
}

/// oracle = sade = blocks for the shape, restricted to the feasible methods.
inline CheckResult cross_method_check(const Shape& sh) {
  std::ostringstream name;
  name << "methods agree " << sh;
  CheckResult res{name.str(), CheckStatus::pass, ""};
  std::optional<WeightDistribution> first;
  std::string first_name;
  int used = 0;
  for (auto method : {CountMethod::oracle, CountMethod::sade, CountMethod::blocks}) {
    if (!method_feasible(method, sh)) continue;
    auto d = count_with(method, sh);
    ++used;
    if (!first) {
      first = d;
      first_name = method_name(method);
    } else if (!(d == *first)) {
      res.status = CheckStatus::fail;
      res.detail += std::string(method_name(method)) + " differs from " + first_name + "; ";
    }
  }
  if (used < 2) {
    res.status = CheckStatus::skipped;
    res.detail = "fewer than two methods feasible";
  } else if (res.status == CheckStatus::pass) {
    res.detail = std::to_string(used) + " methods";
  }
  return res;
}

/// Counts are unchanged when the three dimensions are permuted.
inline CheckResult parastrophe_check(const Shape& sh, const CountSource& source) {
  std::ostringstream name;
  name << "parastrophe invariance " << sh;
  CheckResult res{name.str(), CheckStatus::pass, ""};
  auto base = source(sh);
  if (!base) return {res.name, CheckStatus::skipped, "counts unavailable"};
  int dims[3] = {sh.r, sh.s, sh.n};
  for (const auto& pi : all_parastrophes()) {
    Shape other(dims[pi[0]], dims[pi[1]], dims[pi[2]]);
    auto d = source(other);
    if (!d) {
      res.status = CheckStatus::skipped;
      res.detail = "counts unavailable for some rearrangement";
      continue;
    }
    int top = std::max(base->max_weight(), d->max_weight());
    for (int m = 0; m <= top; ++m)
      if (base->at(m) != d->at(m)) {
        std::ostringstream os;
        os << other << " differs at m=" << m << "; ";
        res.status = CheckStatus::fail;
        res.detail += os.str();
        break;
      }
  }
  return res;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (r.status == CheckStatus::fail) return false;
  return true;
}

}  // namespace plr

#endif  // PLR_VERIFY_HPP
