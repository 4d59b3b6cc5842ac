// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--long] [--only N ...] [--expect-fail N ...]
//
// --long (or PLR_LONG=1) adds the opt-in large instances. The exit status is 0
// when the failing criteria are exactly the --expect-fail set.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plr/plr.hpp"
#include "support.hpp"

using namespace plr;
using plr::testing::read_count_table;
using plr::testing::read_csv;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome(bool)> run;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::string shape_name(const Shape& sh) {
  std::ostringstream os;
  os << sh;
  return os.str();
}

std::vector<BigCount> fixture_counts(const std::map<std::array<int, 3>, plr::testing::CountTable>& table,
                                     const Shape& sh) {
  auto t = table.at({sh.r, sh.s, sh.n});
  t.counts.resize(static_cast<std::size_t>(sh.cells() + 1));
  return t.counts;
}

BigCount fixture_total(const std::string& file, const Shape& sh) {
  return read_count_table(file).at({sh.r, sh.s, sh.n}).total;
}

Outcome oracle_vs_naive(bool) {
  int shapes = 0;
  std::vector<std::string> bad;
  for (int r = 1; r <= 6; ++r)
    for (int s = 1; r * s <= 6; ++s)
      for (int n = 1; n <= 3; ++n) {
        Shape sh(r, s, n);
        ++shapes;
        if (count_all(sh).counts() != plr::testing::weight_histogram(plr::testing::naive_plrs(sh), sh))
          bad.push_back(shape_name(sh));
      }
  if (!bad.empty()) return {false, "mismatch at " + join(bad)};
  return {true, std::to_string(shapes) + " shapes exact"};
}

Outcome golden_weight_tables(bool long_run) {
  auto table = read_count_table("plr_counts.csv");
  std::vector<std::string> notes, bad;
  auto check = [&](const Shape& sh, CountMethod method) {
    auto d = count_with(method, sh);
    auto expected = fixture_counts(table, sh);
    BigCount total = table.at({sh.r, sh.s, sh.n}).total;
    std::string tag = shape_name(sh) + " " + method_name(method);
    if (d.counts() != expected || d.total() != total) bad.push_back(tag);
    else notes.push_back(tag + " total " + to_decimal(d.total()));
  };
  for (auto sh : {Shape(2, 2, 7), Shape(2, 3, 7), Shape(3, 3, 7)}) {
    check(sh, CountMethod::sade);
    check(sh, CountMethod::blocks);
  }
  if (long_run)
    for (auto sh : {Shape(4, 4, 7), Shape(5, 5, 7)}) check(sh, CountMethod::sade);
  if (!bad.empty()) return {false, "mismatch: " + join(bad)};
  return {true, join(notes, "; ")};
}

Outcome triple_agreement(bool) {
  auto blocks = generate_blocks(16, 4);
  int cases = 0;
  std::vector<std::string> bad;
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; s <= 4; ++s)
      for (int n = 1; n <= 4; ++n) {
        Shape sh(r, s, n);
        auto o = count_with(CountMethod::oracle, sh);
        auto z = count_with(CountMethod::sade, sh);
        auto b = count_with(CountMethod::blocks, sh, 1, &blocks);
        cases += sh.cells() + 1;
        if (!(o == z) || !(o == b)) bad.push_back(shape_name(sh));
      }
  if (!bad.empty()) return {false, "disagreement at " + join(bad)};
  return {true, std::to_string(cases) + " (r,s,n,m) cases, 64 shapes"};
}

bool same_block(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  std::vector<std::uint64_t> ca, cb;
  canonical_matrix(a, &ca);
  canonical_matrix(b, &cb);
  return ca == cb;
}

Outcome block_table(bool) {
  auto blocks = generate_blocks(5);
  auto rows = read_csv("blocks_table.csv");
  std::vector<std::string> bad;
  std::vector<char> hit(blocks.size(), 0);
  for (const auto& row : rows) {
    auto m = BinaryMatrix::parse(row[0]);
    int found = -1;
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (same_block(blocks[k].matrix, m)) found = static_cast<int>(k);
    if (found < 0) {
      bad.push_back(row[0] + " missing");
      continue;
    }
    hit[found] = 1;
    if (blocks[found].aut_size != BigCount(row[1])) bad.push_back(row[0] + " aut");
    if (blocks[found].chromatic != plr::testing::parse_factored(row[2])) bad.push_back(row[0] + " chromatic");
  }
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (!hit[k]) bad.push_back(blocks[k].matrix.to_string() + " unlisted");
  if (blocks.size() != 16 || rows.size() != 16) bad.push_back(std::to_string(blocks.size()) + " blocks generated");
  if (!bad.empty()) return {false, join(bad)};
  return {true, "16 blocks, orders and chromatic polynomials exact"};
}

Outcome pg_tables(bool) {
  auto computed = graphs_up_to_rank(4);
  std::map<std::string, TriPoly> named;
  std::vector<char> used(computed.size(), 0);
  auto rows = read_csv("pg_table.csv");
  std::vector<std::string> printed_wrong, unmatched;
  for (const auto& row : rows) {
    int v = std::stoi(row[1]), c = std::stoi(row[3]);
    int printed_e = std::stoi(row[2]);
    bool has_e = row.size() > 6 && !row[6].empty();
    bool has_p = row.size() > 7 && !row[7].empty();
    int e = has_e ? std::stoi(row[6]) : printed_e;
    BigCount aut(row[4]);
    TriPoly printed = plr::testing::eval_table_poly(row[5], named);
    TriPoly p = has_p ? plr::testing::eval_table_poly(row[7], named) : printed;
    named[row[0]] = p;
    bool found = false;
    for (std::size_t k = 0; k < computed.size() && !found; ++k) {
      const auto& g = computed[k];
      if (used[k] || g.cls.vertices != v || g.cls.edges != e || g.cls.components != c || g.cls.aut_size != aut ||
          g.p != p || p_of_g(g.cls.graph) != p)
        continue;
      used[k] = 1;
      found = true;
      if (g.p != printed || g.cls.edges != printed_e) printed_wrong.push_back(row[0]);
    }
    if (!found) unmatched.push_back(row[0]);
  }
  std::size_t listed = rows.size();
  std::ostringstream os;
  os << (listed - printed_wrong.size() - unmatched.size()) << '/' << listed << " rows match as printed";
  if (computed.size() != listed) os << "; " << computed.size() << " graphs computed";
  if (!unmatched.empty()) os << "; no graph for " << join(unmatched);
  if (!printed_wrong.empty())
    os << "; printed value contradicts direct evaluation for " << join(printed_wrong)
       << " (all rows match with the recorded errata)";
  return {printed_wrong.empty() && unmatched.empty() && computed.size() == listed, os.str()};
}

Outcome truncated_consistency(bool) {
  auto graphs = graphs_up_to_rank(4);
  auto blocks = generate_blocks(8);
  std::vector<std::string> bad;
  for (int m = 1; m <= 8; ++m) {
    auto t = f_m_truncated(m, 5, &graphs);
    auto f = f_m_polynomial(m, &blocks);
    if (m <= 5) {
      if (t != f) bad.push_back("m=" + std::to_string(m));
    } else if (t.degree_at_least(3 * m - 9) != f.degree_at_least(3 * m - 9)) {
      bad.push_back("m=" + std::to_string(m) + " degree >= " + std::to_string(3 * m - 9));
    }
  }
  if (!bad.empty()) return {false, "term disagreement: " + join(bad)};
  return {true, "exact for m<=5, top terms agree for m=6,7,8"};
}

Outcome polynomial_structure(bool) {
  auto blocks = generate_blocks(8);
  std::vector<std::string> bad;
  for (int m = 1; m <= 8; ++m) {
    auto f = f_m_polynomial(m, &blocks);
    std::string tag = "m=" + std::to_string(m);
    if (!f.is_symmetric()) bad.push_back(tag + " not symmetric");
    if (f.degree() != 3 * m) bad.push_back(tag + " degree " + std::to_string(f.degree()));
    if (f.coefficient({m, m, m}) != 1) bad.push_back(tag + " leading coefficient");
    if (!f.divisible_by_rsn()) bad.push_back(tag + " not divisible by rsn");
  }
  if (!bad.empty()) return {false, join(bad)};
  return {true, "m=1..8 symmetric, degree 3m, leading (rsn)^m, divisible by rsn"};
}

Outcome class_totals(bool) {
  std::vector<std::string> bad, notes;
  auto expect = [&](const std::string& tag, const BigCount& got, const BigCount& want) {
    if (got != want) bad.push_back(tag + " " + to_decimal(got) + " != " + to_decimal(want));
    else notes.push_back(tag + " " + to_decimal(got));
  };
  const BigCount isom[] = {2, 20, 2029, 5319934};
  for (int n = 1; n <= 4; ++n) {
    Shape sh(n, n, n);
    auto d = isom_count(n);
    expect("isom " + std::to_string(n), d.total(), isom[n - 1]);
    if (d.counts() != fixture_counts(read_count_table("isom_counts.csv"), sh)) bad.push_back("isom " + shape_name(sh) + " per weight");
  }
  const BigCount isot[] = {8, 81, 9878}, mc[] = {6, 39, 2148};
  for (int n = 2; n <= 4; ++n) {
    Shape sh(n, n, n);
    auto a = isot_count(sh), b = mc_count(sh);
    expect("isot " + shape_name(sh), a.total(), isot[n - 2]);
    expect("mc " + shape_name(sh), b.total(), mc[n - 2]);
    if (a.total() != fixture_total("isot_counts.csv", sh) || b.total() != fixture_total("mc_counts.csv", sh))
      bad.push_back(shape_name(sh) + " fixture total");
  }
  if (!bad.empty()) return {false, join(bad)};
  return {true, join(notes)};
}

std::vector<BigCount> full_burnside(const Shape& sh, bool isotopisms_only) {
  auto group = all_paratopisms(sh, isotopisms_only);
  std::vector<BigCount> acc(static_cast<std::size_t>(sh.cells() + 1));
  for (const auto& g : group) {
    auto d = count_fixed_by(g, sh);
    for (int m = 0; m <= sh.cells(); ++m) acc[m] += d[m];
  }
  for (auto& a : acc) a = exact_div(a, BigCount(group.size()), "burnside");
  return acc;
}

Outcome burnside_reduction(bool) {
  std::vector<std::string> bad;
  int shapes = 0;
  for (int r = 1; r <= 3; ++r)
    for (int s = 1; s <= 3; ++s)
      for (int n = 1; n <= 3; ++n) {
        Shape sh(r, s, n);
        ++shapes;
        if (isot_count(sh).counts() != full_burnside(sh, true)) bad.push_back("isot " + shape_name(sh));
        if (mc_count(sh).counts() != full_burnside(sh, false)) bad.push_back("mc " + shape_name(sh));
      }
  if (!bad.empty()) return {false, "mismatch: " + join(bad)};
  return {true, std::to_string(shapes) + " shapes, isotopism and main classes"};
}

Outcome unbounded(bool long_run) {
  int top = long_run ? 8 : 7;
  auto rows = read_csv("unbounded_classes.csv");
  auto iso = unbounded_class_counts(top, ClassKind::isotopism);
  auto mc = unbounded_class_counts(top, ClassKind::main);
  std::vector<std::string> bad;
  for (int m = 0; m <= top; ++m) {
    if (iso[m] != BigCount(rows[m][1])) bad.push_back("isot m=" + std::to_string(m));
    if (mc[m] != BigCount(rows[m][2])) bad.push_back("mc m=" + std::to_string(m));
  }
  if (!bad.empty()) return {false, "mismatch: " + join(bad)};
  std::vector<std::string> a, b;
  for (int m = 0; m <= top; ++m) {
    a.push_back(to_decimal(iso[m]));
    b.push_back(to_decimal(mc[m]));
  }
  return {true, "isot " + join(a, ",") + "; mc " + join(b, ",")};
}

Outcome divisibility(bool) {
  std::map<std::array<int, 3>, std::optional<WeightDistribution>> memo;
  PaddedSource source = [&](int r, int s, int n, int w) -> std::optional<WeightDistribution> {
    std::array<int, 3> key{r, s, n};
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, default_count(r, s, n, 25)).first;
    if (!it->second) return std::nullopt;
    WeightDistribution out(Shape(1, std::max(1, w), 1));
    for (int m = 0; m <= w; ++m) out[m] = it->second->at(m);
    return out;
  };
  long long checks = 0;
  std::vector<std::string> bad;
  for (int r = 1; r <= 5; ++r)
    for (int s = 1; s <= 5; ++s)
      for (int n = 1; n <= 5; ++n)
        for (const auto& res : divisibility_checks(Shape(r, s, n), source)) {
          ++checks;
          if (res.status != CheckStatus::pass) bad.push_back(res.name + " " + status_name(res.status));
        }
  auto blocks = generate_blocks(6);
  long long poly_violations = 0;
  for (int m = 1; m <= 6; ++m) poly_violations += polynomial_divisibility_violations(f_m_polynomial(m, &blocks), m, 4, 5);
  if (poly_violations) bad.push_back(std::to_string(poly_violations) + " polynomial violations");
  if (!bad.empty()) return {false, join(bad)};
  return {true, std::to_string(checks) + " shape congruences over all m, f_1..f_6 on k=1..4, zero violations"};
}

ColoredGraph graph_from_mask(int v, std::uint32_t mask, std::vector<int> colors = {}) {
  ColoredGraph g(v, std::move(colors));
  int bit = 0;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b, ++bit)
      if ((mask >> bit) & 1U) g.add_edge(a, b);
  return g;
}

bool preserves(const ColoredGraph& g, const ColoredGraph& h, const std::vector<int>& p) {
  int v = g.vertex_count();
  for (int a = 0; a < v; ++a) {
    if (g.color(a) != h.color(p[a])) return false;
    for (int b = a + 1; b < v; ++b)
      if (g.has_edge(a, b) != h.has_edge(p[a], p[b])) return false;
  }
  return true;
}

long long brute_aut(const ColoredGraph& g) {
  std::vector<int> p(static_cast<std::size_t>(g.vertex_count()));
  std::iota(p.begin(), p.end(), 0);
  long long c = 0;
  do c += preserves(g, g, p);
  while (std::next_permutation(p.begin(), p.end()));
  return c;
}

bool brute_isomorphic(const ColoredGraph& g, const ColoredGraph& h) {
  std::vector<int> p(static_cast<std::size_t>(g.vertex_count()));
  std::iota(p.begin(), p.end(), 0);
  do
    if (preserves(g, h, p)) return true;
  while (std::next_permutation(p.begin(), p.end()));
  return false;
}

Outcome canon_soundness(bool) {
  long long failures = 0, exhaustive = 0;
  for (int v = 1; v <= 4; ++v) {
    int pairs = v * (v - 1) / 2;
    std::vector<ColoredGraph> graphs;
    for (int coloring = 0; coloring < (1 << v); ++coloring) {
      std::vector<int> colors(static_cast<std::size_t>(v));
      for (int a = 0; a < v; ++a) colors[a] = (coloring >> a) & 1;
      for (std::uint32_t mask = 0; mask < (1U << pairs); ++mask) graphs.push_back(graph_from_mask(v, mask, colors));
    }
    std::vector<std::vector<std::uint64_t>> codes;
    for (const auto& g : graphs) {
      auto code = canonical_form(g).code;
      if (automorphism_count(g) != brute_aut(g)) ++failures;
      for (const auto& p : all_permutations(v))
        if (canonical_form(g.relabeled(p)).code != code) ++failures;
      codes.push_back(std::move(code));
    }
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = i + 1; j < graphs.size(); ++j)
        if ((codes[i] == codes[j]) != brute_isomorphic(graphs[i], graphs[j])) ++failures;
    exhaustive += static_cast<long long>(graphs.size());
  }
  std::mt19937_64 rng(20240611);
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    int v = 1 + static_cast<int>(rng() % 6);
    int pairs = v * (v - 1) / 2;
    std::vector<int> colors(static_cast<std::size_t>(v));
    int palette = 1 + static_cast<int>(rng() % 3);
    for (auto& c : colors) c = static_cast<int>(rng() % palette);
    auto g = graph_from_mask(v, static_cast<std::uint32_t>(rng() & ((1ULL << pairs) - 1)), colors);
    std::vector<int> p(static_cast<std::size_t>(v));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    if (canonical_form(g).code != canonical_form(g.relabeled(Permutation(p))).code) ++failures;
    if (automorphism_count(g) != brute_aut(g)) ++failures;
  }
  std::ostringstream os;
  os << exhaustive << " coloured graphs on <=4 vertices, " << trials << " random graphs on <=6 vertices, " << failures
     << " failures";
  return {failures == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance run"};
  bool long_run = false;
  std::vector<int> only, expect_fail;
  app.add_flag("--long", long_run, "include the opt-in large instances");
  app.add_option("--only", only, "run only these criteria");
  app.add_option("--expect-fail", expect_fail, "criteria known to fail");
  CLI11_PARSE(app, argc, argv);
  if (const char* env = std::getenv("PLR_LONG"); env && std::string(env) == "1") long_run = true;

  const std::vector<Criterion> criteria = {
      {1, "oracle agrees with naive enumeration, r*s<=6, n<=3", 60, oracle_vs_naive},
      {2, "sade and blocks reproduce #PLR(r,s,7;m) tables", long_run ? 7200.0 : 300.0, golden_weight_tables},
      {3, "oracle = sade = blocks for r,s,n<=4", 600, triple_agreement},
      {4, "block table for up to 5 ones", 60, block_table},
      {5, "P(G) tables reproduced as printed", 60, pg_tables},
      {6, "truncated f_m against block assembly, m<=8", 600, truncated_consistency},
      {7, "f_m structure, m<=8", 1800, polynomial_structure},
      {8, "class-count totals", 1800, class_totals},
      {9, "conjugacy-reduced Burnside equals full group, r,s,n<=3", 600, burnside_reduction},
      {10, "unbounded class counts", 1800, unbounded},
      {11, "divisibility battery, r,s,n<=5 and f_1..f_6", 600, divisibility},
      {12, "canonical labelling soundness", 600, canon_soundness},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(long_run);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      out.ok = false;
      out.detail += "; over time limit";
    }
    if (!out.ok) failed.insert(c.id);
    std::cout << (out.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " - " << out.detail
              << " (" << std::fixed << std::setprecision(1) << secs << " s, limit " << c.limit_seconds << " s)"
              << std::endl;
  }

  std::set<int> expected;
  for (int id : expect_fail)
    if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) expected.insert(id);
  std::cout << failed.size() << " failed";
  if (!expected.empty()) {
    std::vector<std::string> ids;
    for (int id : expected) ids.push_back(std::to_string(id));
    std::cout << ", expected to fail: " << join(ids);
  }
  std::cout << std::endl;
  return failed == expected ? 0 : 1;
}
