#ifndef PLR_TEST_SUPPORT_HPP
#define PLR_TEST_SUPPORT_HPP

#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plr/poly.hpp"
#include "plr/types.hpp"

namespace plr::testing {

inline std::string fixture_path(const std::string& name) { return std::string(PLR_FIXTURE_DIR) + "/" + name; }

/// Data lines of a CSV fixture split on commas; '#' comment lines and the header are skipped.
inline std::vector<std::vector<std::string>> read_csv(const std::string& name) {
  std::ifstream is(fixture_path(name));
  if (!is) throw std::runtime_error("missing fixture " + name);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(std::move(cells));
  }
  return rows;
}

struct CountTable {
  std::vector<BigCount> counts;  // indexed by m
  BigCount total = 0;
};

/// r,s,n,m,count fixtures keyed by (r,s,n).
inline std::map<std::array<int, 3>, CountTable> read_count_table(const std::string& name) {
  std::map<std::array<int, 3>, CountTable> out;
  for (const auto& row : read_csv(name)) {
    std::array<int, 3> key{std::stoi(row[0]), std::stoi(row[1]), std::stoi(row[2])};
    auto& t = out[key];
    if (row[3] == "total") {
      t.total = BigCount(row[4]);
    } else {
      auto m = static_cast<std::size_t>(std::stoi(row[3]));
      if (t.counts.size() <= m) t.counts.resize(m + 1);
      t.counts[m] = BigCount(row[4]);
    }
  }
  return out;
}

/// Parses products such as "n(n-1)^2(n^2-3n+3)".
inline UniPoly parse_factored(const std::string& text) {
  std::size_t i = 0;
  auto number = [&]() {
    long long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    return v;
  };
  auto exponent = [&]() -> int {
    if (i < text.size() && text[i] == '^') {
      ++i;
      return static_cast<int>(number());
    }
    return 1;
  };
  auto pow = [](const UniPoly& p, int e) {
    UniPoly out = UniPoly::constant(1);
    for (int k = 0; k < e; ++k) out *= p;
    return out;
  };
  // Sum of terms c*n^k inside parentheses.
  auto sum = [&]() {
    UniPoly p;
    int sign = 1;
    while (i < text.size() && text[i] != ')') {
      if (text[i] == '+') {
        sign = 1;
        ++i;
        continue;
      }
      if (text[i] == '-') {
        sign = -1;
        ++i;
        continue;
      }
      long long c = 1;
      if (std::isdigit(static_cast<unsigned char>(text[i]))) c = number();
      int k = 0;
      if (i < text.size() && text[i] == 'n') {
        ++i;
        k = exponent();
      }
      std::vector<BigInt> coeffs(static_cast<std::size_t>(k + 1), 0);
      coeffs[k] = sign * c;
      p += UniPoly(std::move(coeffs));
      sign = 1;
    }
    return p;
  };
  UniPoly out = UniPoly::constant(1);
  while (i < text.size()) {
    if (text[i] == 'n') {
      ++i;
      out *= pow(UniPoly::variable(), exponent());
    } else if (text[i] == '(') {
      ++i;
      UniPoly inner = sum();
      ++i;
      out *= pow(inner, exponent());
    } else {
      throw std::runtime_error("cannot parse factor in " + text);
    }
  }
  return out;
}

/// Parses bar-notation sums such as "bar(300)+6bar(110)-12bar(100)+16".
inline TriPoly parse_bar(const std::string& text) {
  TriPoly p;
  std::size_t i = 0;
  while (i < text.size()) {
    int sign = 1;
    while (i < text.size() && (text[i] == '+' || text[i] == '-' || text[i] == ' ')) {
      if (text[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= text.size()) break;
    long long c = 0;
    bool has_c = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = c * 10 + (text[i++] - '0');
      has_c = true;
    }
    while (i < text.size() && text[i] == ' ') ++i;
    if (text.compare(i, 4, "bar(") == 0) {
      i += 4;
      std::array<int, 3> e{};
      for (int k = 0; k < 3; ++k) e[k] = text[i++] - '0';
      ++i;
      p += TriPoly::bar(e[0], e[1], e[2]) * BigInt(sign * (has_c ? c : 1));
    } else {
      p += TriPoly::constant(BigInt(sign * c));
    }
  }
  return p;
}

/// A product of bar sums and P(name)^k references to earlier rows of the P(G) table.
inline TriPoly eval_table_poly(const std::string& text, const std::map<std::string, TriPoly>& named) {
  TriPoly p = TriPoly::constant(1);
  std::istringstream is(text);
  for (std::string tok; is >> tok;) {
    if (tok.rfind("P(", 0) == 0) {
      auto close = tok.find(')');
      int k = close + 1 < tok.size() && tok[close + 1] == '^' ? std::stoi(tok.substr(close + 2)) : 1;
      const TriPoly& f = named.at(tok.substr(2, close - 2));
      for (int t = 0; t < k; ++t) p *= f;
    } else {
      p *= parse_bar(tok);
    }
  }
  return p;
}

/// Every assignment of {empty} u [n] to the cells, filtered by the Latin condition.
inline std::vector<PLR> naive_plrs(const Shape& sh) {
  std::vector<PLR> out;
  std::vector<int> cell(static_cast<std::size_t>(sh.cells()), 0);
  for (;;) {
    bool ok = true;
    for (int a = 0; a < sh.cells() && ok; ++a)
      for (int b = a + 1; b < sh.cells() && ok; ++b)
        if (cell[a] && cell[a] == cell[b] && (a / sh.s == b / sh.s || a % sh.s == b % sh.s)) ok = false;
    if (ok) {
      std::vector<std::vector<int>> rows(static_cast<std::size_t>(sh.r), std::vector<int>(sh.s));
      for (int a = 0; a < sh.cells(); ++a) rows[a / sh.s][a % sh.s] = cell[a];
      out.push_back(PLR::from_rows(sh, rows));
    }
    int k = 0;
    while (k < sh.cells() && ++cell[k] > sh.n) cell[k++] = 0;
    if (k == sh.cells()) break;
  }
  return out;
}

inline std::vector<BigCount> weight_histogram(const std::vector<PLR>& ls, const Shape& sh) {
  std::vector<BigCount> h(static_cast<std::size_t>(sh.cells() + 1));
  for (const auto& L : ls) ++h[L.weight()];
  return h;
}

}  // namespace plr::testing

#endif  // PLR_TEST_SUPPORT_HPP
