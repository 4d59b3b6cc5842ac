#ifndef PLR_IO_HPP
#define PLR_IO_HPP

// Result cache and output formatting.
//
// Cache lines: "<KIND> <r> <s> <n> <m> <count>" with KIND one of PLR, ISOT,
// ISOM, MC. The file is append-only; on load the last line for a key wins and
// a differing earlier value is reported as a warning.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "plr/distribution.hpp"
#include "plr/poly.hpp"

namespace plr {

enum class OutputFormat { table, csv, json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::table;
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format " + s);
}

inline constexpr const char* kCacheEnv = "PLR_CACHE";

/// Cache path from the environment, or empty.
inline std::filesystem::path default_cache_path() {
  const char* v = std::getenv(kCacheEnv);
  return v ? std::filesystem::path(v) : std::filesystem::path();
}

class ResultCache {
 public:
  using Key = std::tuple<std::string, int, int, int, int>;

  ResultCache() = default;
  explicit ResultCache(std::filesystem::path file) : file_(std::move(file)) { load(); }

  bool enabled() const { return !file_.empty(); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t size() const { return values_.size(); }

  std::optional<BigCount> get(const std::string& kind, const Shape& sh, int m) const {
    auto it = values_.find({kind, sh.r, sh.s, sh.n, m});
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  /// Appends a line unless the same value is already stored.
  void put(const std::string& kind, const Shape& sh, int m, const BigCount& v) {
    Key key{kind, sh.r, sh.s, sh.n, m};
    auto it = values_.find(key);
    if (it != values_.end()) {
      if (it->second == v) return;
      warn(key, it->second, v);
    }
    values_[key] = v;
    if (!enabled()) return;
    if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
    std::ofstream os(file_, std::ios::app);
    os << line(key, v) << '\n';
  }

  /// The full distribution, when every weight 0..rs is cached.
  std::optional<WeightDistribution> get_distribution(const std::string& kind, const Shape& sh) const {
    WeightDistribution d(sh);
    for (int m = 0; m <= sh.cells(); ++m) {
      auto v = get(kind, sh, m);
      if (!v) return std::nullopt;
      d[m] = *v;
    }
    return d;
  }

  void put_distribution(const std::string& kind, const WeightDistribution& d) {
    for (int m = 0; m <= d.max_weight(); ++m) put(kind, d.shape(), m, d[m]);
  }

 private:
  static std::string line(const Key& k, const BigCount& v) {
    std::ostringstream os;
    os << std::get<0>(k) << ' ' << std::get<1>(k) << ' ' << std::get<2>(k) << ' ' << std::get<3>(k) << ' '
       << std::get<4>(k) << ' ' << v;
    return os.str();
  }

  void warn(const Key& k, const BigCount& old_value, const BigCount& new_value) {
    std::ostringstream os;
    os << "cache conflict for " << std::get<0>(k) << ' ' << std::get<1>(k) << '.' << std::get<2>(k) << '.'
       << std::get<3>(k) << " m=" << std::get<4>(k) << ": " << old_value << " replaced by " << new_value;
    warnings_.push_back(os.str());
  }

  void load() {
    std::ifstream is(file_);
    if (!is) return;
    std::string text;
    int lineno = 0;
    while (std::getline(is, text)) {
      ++lineno;
      if (text.empty() || text[0] == '#') continue;
      std::istringstream ls(text);
      std::string kind, count;
      int r, s, n, m;
      if (!(ls >> kind >> r >> s >> n >> m >> count) ||
          (kind != "PLR" && kind != "ISOT" && kind != "ISOM" && kind != "MC")) {
        warnings_.push_back("ignoring malformed cache line " + std::to_string(lineno));
        continue;
      }
      BigCount v;
      try {
        v = BigCount(count);
      } catch (const std::exception&) {
        warnings_.push_back("ignoring malformed cache line " + std::to_string(lineno));
        continue;
      }
      Key key{kind, r, s, n, m};
      auto it = values_.find(key);
      if (it != values_.end() && it->second != v) warn(key, it->second, v);
      values_[key] = v;
    }
  }

  std::filesystem::path file_;
  std::map<Key, BigCount> values_;
  std::vector<std::string> warnings_;
};

inline std::string to_decimal(const BigCount& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

/// Counts as a JSON object {"r","s","n","method","counts"} with decimal strings.
inline nlohmann::json distribution_json(const WeightDistribution& d, const std::string& method) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& c : d.counts()) counts.push_back(to_decimal(c));
  return {{"r", d.shape().r}, {"s", d.shape().s}, {"n", d.shape().n}, {"method", method}, {"counts", counts}};
}

/// Renders a distribution; `only_m` restricts output to one weight.
inline std::string render_distribution(const WeightDistribution& d, OutputFormat fmt, const std::string& method,
                                       std::optional<int> only_m = std::nullopt) {
  std::ostringstream os;
  const Shape& sh = d.shape();
  switch (fmt) {
    case OutputFormat::json: {
      auto j = distribution_json(d, method);
      if (only_m) {
        j["m"] = *only_m;
        j["count"] = to_decimal(d.at(*only_m));
      }
      os << j.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      os << "r,s,n,m,count\n";
      for (int m = 0; m <= d.max_weight(); ++m)
        if (!only_m || *only_m == m) os << sh.r << ',' << sh.s << ',' << sh.n << ',' << m << ',' << d[m] << '\n';
      break;
    case OutputFormat::table: {
      if (only_m) {
        os << d.at(*only_m) << '\n';
        break;
      }
      std::size_t width = 5;
      for (const auto& c : d.counts()) width = std::max(width, to_decimal(c).size());
      os << sh << " (" << method << "): ";
      for (int m = 0; m <= d.max_weight(); ++m) os << (m ? ", " : "") << d[m];
      os << '\n';
      for (int m = 0; m <= d.max_weight(); ++m) {
        std::string c = to_decimal(d[m]);
        os << (m < 10 ? " " : "") << m << "  " << std::string(width - c.size(), ' ') << c << '\n';
      }
      std::string t = to_decimal(d.total());
      os << "total " << std::string(width > t.size() ? width - t.size() : 0, ' ') << t << '\n';
      break;
    }
  }
  return os.str();
}

/// Per-weight counts indexed from 0 in any format (used for unbounded class counts).
inline std::string render_sequence(const std::vector<BigCount>& v, OutputFormat fmt, const std::string& label) {
  std::ostringstream os;
  switch (fmt) {
    case OutputFormat::json: {
      nlohmann::json counts = nlohmann::json::array();
      for (const auto& c : v) counts.push_back(to_decimal(c));
      os << nlohmann::json{{"kind", label}, {"counts", counts}}.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      os << "m," << label << '\n';
      for (std::size_t m = 0; m < v.size(); ++m) os << m << ',' << v[m] << '\n';
      break;
    case OutputFormat::table:
      for (std::size_t m = 0; m < v.size(); ++m) os << (m < 10 ? " " : "") << m << "  " << v[m] << '\n';
      break;
  }
  return os.str();
}

/// A symmetric polynomial grouped by the largest power of rsn dividing each
/// term, e.g. "(rsn)^2 + (rsn)(2 - 100̄)".
inline std::string render_rsn_grouped(const TriPoly& p, bool ascii = false) {
  std::map<int, TriPoly, std::greater<>> groups;
  for (const auto& [e, c] : p.terms()) {
    int k = std::min({e[0], e[1], e[2]});
    groups[k].add_term({e[0] - k, e[1] - k, e[2] - k}, c);
  }
  if (groups.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, q] : groups) {
    std::string prefix = k == 0 ? "" : (k == 1 ? "(rsn)" : "(rsn)^" + std::to_string(k));
    BarForm b = to_bar_form(q);
    bool single_one = b.size() == 1 && b.begin()->first == std::array<int, 3>{0, 0, 0} && abs(b.begin()->second) == 1;
    bool negative_one = single_one && b.begin()->second < 0;
    if (!first) os << (negative_one ? " - " : " + ");
    else if (negative_one) os << '-';
    if (single_one) {
      os << (k == 0 ? "1" : (k == 1 ? "rsn" : prefix));
    } else if (prefix.empty()) {
      os << bar_string(b, ascii);
    } else {
      os << prefix << '(' << bar_string(b, ascii) << ')';
    }
    first = false;
  }
  return os.str();
}

}  // namespace plr

#endif  // PLR_IO_HPP
