// plr: counts of partial Latin rectangles, their classes and counting polynomials.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "plr/plr.hpp"

namespace {

using namespace plr;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInfeasible = 2;

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "table";
  std::string cache;
  int threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--cache", c.cache, std::string("Result cache file (default: $") + kCacheEnv + ")");
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

ResultCache open_cache(const Common& c) {
  std::filesystem::path p = c.cache.empty() ? default_cache_path() : std::filesystem::path(c.cache);
  return p.empty() ? ResultCache() : ResultCache(p);
}

void flush_warnings(const ResultCache& cache) {
  for (const auto& w : cache.warnings()) std::cerr << "warning: " << w << '\n';
}

Shape make_shape(int r, int s, int n) {
  if (r < 1 || s < 1 || n < 1) throw Infeasible("dimensions must be positive");
  return Shape(r, s, n);
}

std::array<int, 3> parse_triple(const std::string& text) {
  std::array<int, 3> v{};
  std::istringstream is(text);
  char c1 = 0, c2 = 0;
  if (!(is >> v[0] >> c1 >> v[1] >> c2 >> v[2]) || c1 != ',' || c2 != ',')
    throw CLI::ValidationError("--eval", "expected r,s,n");
  return v;
}

struct CountArgs {
  Common common;
  int r = 1, s = 1, n = 1;
  std::optional<int> m;
  std::string method = "sade";
  int plain_tail_rows = 1;
  int max_ones = 16;
};

int run_count(const CountArgs& a) {
  Shape sh = make_shape(a.r, a.s, a.n);
  CountMethod method = a.method == "oracle" ? CountMethod::oracle
                       : a.method == "blocks" ? CountMethod::blocks
                                              : CountMethod::sade;
  if (a.m && (*a.m < 0 || *a.m > sh.cells())) throw Infeasible("weight outside 0..rs");
  auto cache = open_cache(a.common);
  WeightDistribution d(sh);
  if (method == CountMethod::blocks) {
    int top = a.m ? *a.m : sh.cells();
    if (top > a.max_ones) throw Infeasible("module chromatic: weight " + std::to_string(top) + " exceeds --max-ones");
    if (!a.m && !method_feasible(method, sh)) throw Infeasible(infeasible_reason(method, sh));
    auto blocks = generate_blocks(top, std::min(top, std::max(sh.r, sh.s)));
    for (int m = 0; m <= sh.cells(); ++m)
      if (!a.m || *a.m == m) d[m] = count_via_blocks(sh, m, &blocks);
  } else {
    if (!method_feasible(method, sh)) throw Infeasible(infeasible_reason(method, sh));
    d = count_with(method, sh, a.plain_tail_rows);
  }
  if (a.m)
    cache.put("PLR", sh, *a.m, d[*a.m]);
  else
    cache.put_distribution("PLR", d);
  flush_warnings(cache);
  std::cout << render_distribution(d, parse_format(a.common.format), a.method, a.m);
  return kExitOk;
}

struct PolyArgs {
  Common common;
  int m = 1;
  std::string method = "blocks";
  std::string eval;
  bool expanded = false;
  bool ascii = false;
};

int run_poly(const PolyArgs& a) {
  if (a.m < 1) throw Infeasible("m must be positive");
  TriPoly f;
  if (a.method == "blocks") {
    if (a.m > 13) throw Infeasible("module chromatic: f_m limited to m <= 13");
    f = f_m_polynomial(a.m);
  } else {
    if (a.m > 30) throw Infeasible("module incexc: truncated expansion limited to m <= 30");
    f = f_m_truncated(a.m, 5);
  }
  std::optional<BigInt> value;
  if (!a.eval.empty()) {
    auto v = parse_triple(a.eval);
    value = f.eval(v[0], v[1], v[2]);
  }
  auto fmt = parse_format(a.common.format);
  std::string grouped = render_rsn_grouped(f, a.ascii);
  if (fmt == OutputFormat::json) {
    nlohmann::json j{{"m", a.m}, {"method", a.method}, {"poly", render_rsn_grouped(f, true)},
                     {"expanded", f.to_expanded_string()}};
    if (value) j["value"] = value->str();
    std::cout << j.dump() << '\n';
  } else if (value) {
    std::cout << *value << '\n';
  } else {
    std::cout << grouped << '\n';
    if (a.expanded) std::cout << f.to_expanded_string() << '\n';
  }
  return kExitOk;
}

struct ClassesArgs {
  Common common;
  int r = 1, s = 1, n = 1;
  std::string kind = "isot";
};

int run_classes(const ClassesArgs& a) {
  Shape sh = make_shape(a.r, a.s, a.n);
  if (std::max({sh.r, sh.s, sh.n}) > 6) throw Infeasible("module classes: Burnside counts limited to r,s,n <= 6");
  auto cache = open_cache(a.common);
  WeightDistribution d;
  std::string tag;
  if (a.kind == "isom") {
    if (sh.r != sh.s || sh.s != sh.n) throw Infeasible("module classes: isomorphism classes need r = s = n");
    d = isom_count(sh.n);
    tag = "ISOM";
  } else if (a.kind == "isot") {
    d = isot_count(sh);
    tag = "ISOT";
  } else {
    d = mc_count(sh);
    tag = "MC";
  }
  cache.put_distribution(tag, d);
  flush_warnings(cache);
  std::cout << render_distribution(d, parse_format(a.common.format), a.kind);
  return kExitOk;
}

struct UnboundedArgs {
  Common common;
  int max_m = 3;
  std::string kind = "isot";
  bool quiet = false;
};

int run_unbounded(const UnboundedArgs& a) {
  if (a.max_m < 0) throw Infeasible("max-m must be non-negative");
  if (a.max_m > 12) throw Infeasible("module classes: unbounded enumeration limited to m <= 12");
  ClassKind kind = a.kind == "main" || a.kind == "mc" ? ClassKind::main : ClassKind::isotopism;
  auto counts = unbounded_class_counts(a.max_m, kind, [&](int m, std::size_t c) {
    if (!a.quiet) std::cerr << "level " << m << ": " << c << " classes\n";
  });
  std::cout << render_sequence(counts, parse_format(a.common.format), kind == ClassKind::main ? "main" : "isotopism");
  return kExitOk;
}

struct VerifyArgs {
  Common common;
  int r = 1, s = 1, n = 1;
  std::optional<int> k;
  std::optional<int> poly_m;
  int span = 5;
};

int run_verify(const VerifyArgs& a) {
  Shape sh = make_shape(a.r, a.s, a.n);
  auto cache = open_cache(a.common);
  auto lookup = [&](int r, int s, int n, int w) -> std::optional<WeightDistribution> {
    if (r > 0 && s > 0 && n > 0) {
      Shape o(r, s, n);
      if (auto d = cache.get_distribution("PLR", o)) {
        WeightDistribution out(Shape(1, std::max(1, w), 1));
        for (int m = 0; m <= out.max_weight(); ++m) out[m] = d->at(m);
        return out;
      }
      auto d = default_count(r, s, n, o.cells());
      if (!d) return std::nullopt;
      WeightDistribution full(o);
      for (int m = 0; m <= o.cells(); ++m) full[m] = d->at(m);
      cache.put_distribution("PLR", full);
      WeightDistribution out(Shape(1, std::max(1, w), 1));
      for (int m = 0; m <= out.max_weight(); ++m) out[m] = full.at(m);
      return out;
    }
    return default_count(r, s, n, w);
  };
  std::vector<CheckResult> results = divisibility_checks(sh, lookup, a.k);
  results.push_back(cross_method_check(sh));
  results.push_back(parastrophe_check(sh, [&](const Shape& o) -> std::optional<WeightDistribution> {
    auto d = lookup(o.r, o.s, o.n, o.cells());
    if (!d) return std::nullopt;
    WeightDistribution out(o);
    for (int m = 0; m <= o.cells(); ++m) out[m] = d->at(m);
    return out;
  }));
  if (a.poly_m) {
    int max_k = a.k.value_or(3);
    if (*a.poly_m < 1 || *a.poly_m > 13) throw Infeasible("module chromatic: f_m limited to 1 <= m <= 13");
    long long bad = polynomial_divisibility_violations(f_m_polynomial(*a.poly_m), *a.poly_m, max_k, a.span);
    std::ostringstream name;
    name << "polynomial congruences f_" << *a.poly_m << " k<=" << max_k << " span " << a.span;
    results.push_back({name.str(), bad ? CheckStatus::fail : CheckStatus::pass,
                       bad ? std::to_string(bad) + " violations" : ""});
  }
  flush_warnings(cache);
  auto fmt = parse_format(a.common.format);
  if (fmt == OutputFormat::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& res : results)
      arr.push_back({{"check", res.name}, {"status", status_name(res.status)}, {"detail", res.detail}});
    std::cout << nlohmann::json{{"r", sh.r}, {"s", sh.s}, {"n", sh.n}, {"checks", arr}}.dump() << '\n';
  } else {
    for (const auto& res : results) {
      std::cout << status_name(res.status) << (fmt == OutputFormat::csv ? "," : "  ") << res.name;
      if (!res.detail.empty()) std::cout << (fmt == OutputFormat::csv ? "," : "  ") << res.detail;
      std::cout << '\n';
    }
  }
  return all_passed(results) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial Latin rectangle enumeration"};
  app.require_subcommand(1);

  CountArgs count;
  auto* c = app.add_subcommand("count", "#PLR(r,s,n;m) for every weight m");
  add_common(c, count.common);
  c->add_option("--r", count.r, "Rows")->required();
  c->add_option("--s", count.s, "Columns")->required();
  c->add_option("--n", count.n, "Symbols")->required();
  c->add_option("--m", count.m, "Single weight");
  c->add_option("--method", count.method, "Counting method")->check(CLI::IsMember({"oracle", "sade", "blocks"}));
  c->add_option("--plain-tail-rows", count.plain_tail_rows, "Rows counted without Sade merging")
      ->check(CLI::NonNegativeNumber);
  c->add_option("--max-ones", count.max_ones, "Largest block weight for the blocks method")
      ->check(CLI::PositiveNumber);

  PolyArgs poly;
  auto* p = app.add_subcommand("poly", "f_m(r,s,n) = m! #PLR(r,s,n;m)");
  add_common(p, poly.common);
  p->add_option("--m", poly.m, "Weight")->required();
  p->add_option("--method", poly.method, "Construction")->check(CLI::IsMember({"blocks", "incexc-truncated"}));
  p->add_option("--eval", poly.eval, "Evaluate at r,s,n");
  p->add_flag("--expanded", poly.expanded, "Also print the expanded monomials");
  p->add_flag("--ascii", poly.ascii, "Write bar(abc) instead of overlined exponents");

  ClassesArgs classes;
  auto* k = app.add_subcommand("classes", "Isomorphism, isotopism or main classes by weight");
  add_common(k, classes.common);
  k->add_option("--r", classes.r, "Rows")->required();
  k->add_option("--s", classes.s, "Columns")->required();
  k->add_option("--n", classes.n, "Symbols")->required();
  k->add_option("--kind", classes.kind, "Class type")->check(CLI::IsMember({"isom", "isot", "mc"}));

  UnboundedArgs unbounded;
  auto* u = app.add_subcommand("classes-unbounded", "Classes of weight m when r, s, n >= m");
  add_common(u, unbounded.common);
  u->add_option("--max-m", unbounded.max_m, "Largest weight")->required();
  u->add_option("--kind", unbounded.kind, "Class type")
      ->check(CLI::IsMember({"isot", "isotopism", "mc", "main"}));
  u->add_flag("--quiet", unbounded.quiet, "No progress output");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Congruence, cross-method and symmetry checks");
  add_common(v, verify.common);
  v->add_option("--r", verify.r, "Rows")->required();
  v->add_option("--s", verify.s, "Columns")->required();
  v->add_option("--n", verify.n, "Symbols")->required();
  v->add_option("--k", verify.k, "Single k for the congruences")->check(CLI::NonNegativeNumber);
  v->add_option("--poly", verify.poly_m, "Also check the congruences on f_m for this m");
  v->add_option("--span", verify.span, "Range of r,s,n above k for --poly")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInfeasible;
  }

  try {
    if (*c) return run_count(count);
    if (*p) return run_poly(poly);
    if (*k) return run_classes(classes);
    if (*u) return run_unbounded(unbounded);
    if (*v) return run_verify(verify);
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const SizeLimitError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return kExitOk;
}
