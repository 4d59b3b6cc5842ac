#ifndef PLR_SADE_HPP
#define PLR_SADE_HPP

// Row-by-row enumeration over Sade-equivalence classes. Extensions of a prefix
// depend only on the symbol sets of its columns, so a class is identified by
// the canonical form of its column/symbol incidence graph and the prefix itself
// is never stored: the Sade number decodes back to a set of column masks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plr/canon.hpp"
#include "plr/distribution.hpp"
#include "plr/oracle.hpp"
#include "plr/types.hpp"

namespace plr {

struct SadeRecord {
  std::uint64_t sade_number = 0;
  int weight = 0;
  BigCount multiplier = 1;

  friend bool operator==(const SadeRecord&, const SadeRecord&) = default;
};

using SadeLevel = std::vector<SadeRecord>;

inline void check_sade_shape(const Shape& sh) {
  if (sh.s * sh.n > 64) throw SizeLimitError("Sade numbers need s*n <= 64");
  if (sh.n > 32 || sh.r > 64) throw SizeLimitError("Sade engine needs n <= 32");
}

/// Symbol sets of the columns: bit k of masks[j] is set when symbol k occurs in column j.
inline std::vector<std::uint32_t> column_masks(const PLR& L) {
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(L.shape().s), 0);
  for (const auto& e : L.entries()) masks[e.col] |= 1U << e.symbol;
  return masks;
}

/// Canonical biadjacency of the column/symbol graph, read row-major with the
/// first bit most significant.
inline std::uint64_t sade_number(const std::vector<std::uint32_t>& masks, int n) {
  int s = static_cast<int>(masks.size());
  if (s * n > 64) throw SizeLimitError("Sade number does not fit in 64 bits");
  std::vector<int> colors(static_cast<std::size_t>(s + n), 2);
  std::fill(colors.begin(), colors.begin() + s, 1);
  ColoredGraph g(s + n, std::move(colors));
  for (int j = 0; j < s; ++j)
    for (std::uint32_t m = masks[j]; m; m &= m - 1) g.add_edge(j, s + std::countr_zero(m));
  auto rel = canonical_form(g).relabeling;
  std::uint64_t number = 0;
  int bits = s * n;
  for (int j = 0; j < s; ++j)
    for (std::uint32_t m = masks[j]; m; m &= m - 1) {
      int a = rel(j), b = rel(s + std::countr_zero(m)) - s;
      number |= std::uint64_t{1} << (bits - 1 - (a * n + b));
    }
  return number;
}

inline std::uint64_t sade_number(const PLR& L) {
  check_sade_shape(L.shape());
  return sade_number(column_masks(L), L.shape().n);
}

/// Column masks of the canonical representative of a Sade number.
inline std::vector<std::uint32_t> decode_sade_number(std::uint64_t number, int s, int n) {
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(s), 0);
  int bits = s * n;
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < n; ++b)
      if ((number >> (bits - 1 - (a * n + b))) & 1U) masks[a] |= 1U << b;
  return masks;
}

/// The parastrophic rearrangement the engine runs: the last two dimensions sorted.
inline Shape orient_shape(const Shape& sh) {
  return {sh.r, std::min(sh.s, sh.n), std::max(sh.s, sh.n)};
}

struct SadeOptions {
  /// The last k rows are counted by plain backtracking from each level representative.
  int plain_tail_rows = 0;
  /// When non-empty, each level is written here and existing levels are resumed.
  std::filesystem::path checkpoint_dir;
  /// Pending extension tuples held before a sorted run is merged into the level.
  std::size_t batch_size = std::size_t{1} << 20;
  /// Called after each level with (level, database size).
  std::function<void(int, std::size_t)> progress;
};

namespace detail {

inline void write_u16(std::ostream& os, int v) {
  os.put(static_cast<char>((v >> 8) & 0xff));
  os.put(static_cast<char>(v & 0xff));
}

inline int read_u16(std::istream& is) {
  int hi = is.get(), lo = is.get();
  if (!is) throw std::runtime_error("truncated Sade checkpoint");
  return (hi << 8) | lo;
}

}  // namespace detail

/// Binary level file: "SADE", version 1, r, s, n, level (2 bytes each), then
/// records of sade_number (8 bytes), weight (2 bytes) and multiplier as a
/// 2-byte length followed by big-endian magnitude bytes. Integers big-endian.
inline void write_sade_level(const std::filesystem::path& file, const Shape& sh, int level,
                             const SadeLevel& db) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  os.write("SADE", 4);
  detail::write_u16(os, 1);
  for (int v : {sh.r, sh.s, sh.n, level}) detail::write_u16(os, v);
  for (const auto& rec : db) {
    for (int k = 7; k >= 0; --k) os.put(static_cast<char>((rec.sade_number >> (8 * k)) & 0xff));
    detail::write_u16(os, rec.weight);
    std::vector<unsigned char> mag;
    boost::multiprecision::export_bits(rec.multiplier, std::back_inserter(mag), 8);
    detail::write_u16(os, static_cast<int>(mag.size()));
    os.write(reinterpret_cast<const char*>(mag.data()), static_cast<std::streamsize>(mag.size()));
  }
}

/// Returns false when the file is missing or belongs to a different shape or level.
inline bool read_sade_level(const std::filesystem::path& file, const Shape& sh, int level, SadeLevel& db) {
  std::ifstream is(file, std::ios::binary);
  if (!is) return false;
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != "SADE") return false;
  if (detail::read_u16(is) != 1) return false;
  for (int v : {sh.r, sh.s, sh.n, level})
    if (detail::read_u16(is) != v) return false;
  db.clear();
  for (;;) {
    unsigned char num[8];
    if (!is.read(reinterpret_cast<char*>(num), 8)) break;
    SadeRecord rec;
    for (unsigned char byte : num) rec.sade_number = (rec.sade_number << 8) | byte;
    rec.weight = detail::read_u16(is);
    int len = detail::read_u16(is);
    std::vector<unsigned char> mag(static_cast<std::size_t>(len));
    if (!is.read(reinterpret_cast<char*>(mag.data()), len)) throw std::runtime_error("truncated Sade checkpoint");
    rec.multiplier = 0;
    boost::multiprecision::import_bits(rec.multiplier, mag.begin(), mag.end(), 8);
    db.push_back(std::move(rec));
  }
  return true;
}

namespace detail {

/// Accumulates (sade_number, multiplier) tuples into a sorted level database.
class LevelBuilder {
 public:
  explicit LevelBuilder(std::size_t batch_size) : batch_size_(batch_size) {}

  void add(std::uint64_t number, int weight, BigCount multiplier) {
    pending_.push_back({number, weight, std::move(multiplier)});
    if (pending_.size() >= batch_size_) flush();
  }

  SadeLevel finish() {
    flush();
    return std::move(db_);
  }

 private:
  void flush() {
    if (pending_.empty()) return;
    std::sort(pending_.begin(), pending_.end(),
              [](const SadeRecord& a, const SadeRecord& b) { return a.sade_number < b.sade_number; });
    SadeLevel merged;
    merged.reserve(db_.size() + pending_.size());
    auto a = db_.begin(), b = pending_.begin();
    auto push = [&](SadeRecord&& rec) {
      if (!merged.empty() && merged.back().sade_number == rec.sade_number) {
        if (merged.back().weight != rec.weight)
          throw InvariantError("Sade-equivalent prefixes with different weights");
        merged.back().multiplier += rec.multiplier;
      } else {
        merged.push_back(std::move(rec));
      }
    };
    while (a != db_.end() || b != pending_.end()) {
      if (b == pending_.end() || (a != db_.end() && a->sade_number <= b->sade_number))
        push(std::move(*a++));
      else
        push(std::move(*b++));
    }
    db_ = std::move(merged);
    pending_.clear();
  }

  std::size_t batch_size_;
  SadeLevel db_;
  std::vector<SadeRecord> pending_;
};

/// Every legal next row for the given column masks, as the resulting masks.
template <class Visit>
void for_each_row_extension(std::vector<std::uint32_t>& masks, int n, Visit&& visit) {
  std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  int s = static_cast<int>(masks.size());
  auto rec = [&](auto&& self, int j, std::uint32_t row, int added) -> void {
    if (j == s) {
      visit(masks, added);
      return;
    }
    self(self, j + 1, row, added);
    for (std::uint32_t free = full & ~row & ~masks[j]; free; free &= free - 1) {
      std::uint32_t b = free & (~free + 1);
      masks[j] |= b;
      self(self, j + 1, row | b, added + 1);
      masks[j] &= ~b;
    }
  };
  rec(rec, 0, 0, 0);
}

/// Weight histogram of all ways to add `rows` further rows to the given columns.
inline std::vector<std::uint64_t> tail_histogram(const std::vector<std::uint32_t>& masks, int rows, int n) {
  int s = static_cast<int>(masks.size());
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(rows * s + 1), 0);
  std::vector<std::uint32_t> cols = masks;
  std::vector<std::uint64_t> dp(std::size_t{1} << n), next(std::size_t{1} << n);
  std::vector<std::uint32_t> allowed(static_cast<std::size_t>(s));
  std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  auto row = [&](auto&& self, int left, int w) -> void {
    if (left == 1) {
      for (int j = 0; j < s; ++j) allowed[j] = full & ~cols[j];
      last_row_histogram(allowed, n, dp, next, hist.data() + w);
      return;
    }
    for_each_row_extension(cols, n, [&](std::vector<std::uint32_t>&, int added) { self(self, left - 1, w + added); });
  };
  if (rows > 0) row(row, rows, 0);
  else hist[0] = 1;
  return hist;
}

}  // namespace detail

/// Builds the level database for `levels` rows, resuming from checkpoints when available.
inline SadeLevel sade_levels(const Shape& sh, int levels, const SadeOptions& opt = {}) {
  check_sade_shape(sh);
  SadeLevel db{{0, 0, 1}};
  int start = 0;
  if (!opt.checkpoint_dir.empty()) {
    std::filesystem::create_directories(opt.checkpoint_dir);
    for (int lvl = levels; lvl >= 1; --lvl) {
      SadeLevel saved;
      if (read_sade_level(opt.checkpoint_dir / ("level_" + std::to_string(lvl) + ".sade"), sh, lvl, saved)) {
        db = std::move(saved);
        start = lvl;
        break;
      }
    }
  }
  std::unordered_map<std::uint64_t, std::uint64_t> local;
  for (int lvl = start + 1; lvl <= levels; ++lvl) {
    detail::LevelBuilder builder(opt.batch_size);
    for (const auto& rec : db) {
      auto masks = decode_sade_number(rec.sade_number, sh.s, sh.n);
      local.clear();
      std::unordered_map<std::uint64_t, int> weights;
      detail::for_each_row_extension(masks, sh.n, [&](const std::vector<std::uint32_t>& m, int added) {
        auto key = sade_number(m, sh.n);
        ++local[key];
        weights[key] = rec.weight + added;
      });
      for (const auto& [key, count] : local) builder.add(key, weights[key], rec.multiplier * count);
    }
    db = builder.finish();
    if (!opt.checkpoint_dir.empty())
      write_sade_level(opt.checkpoint_dir / ("level_" + std::to_string(lvl) + ".sade"), sh, lvl, db);
    if (opt.progress) opt.progress(lvl, db.size());
  }
  return db;
}

/// #PLR(r,s,n;m) for every m via Sade's method on the oriented shape.
inline WeightDistribution sade_count(const Shape& shape, const SadeOptions& opt = {}) {
  Shape sh = orient_shape(shape);
  check_sade_shape(sh);
  if (opt.plain_tail_rows < 0) throw ShapeError("plain_tail_rows must be non-negative");
  int tail = std::min(opt.plain_tail_rows, sh.r);
  if (tail > 0 && sh.n > 20) throw SizeLimitError("plain tail rows need n <= 20");
  SadeLevel db = sade_levels(sh, sh.r - tail, opt);
  WeightDistribution out(shape);
  for (const auto& rec : db) {
    if (tail == 0) {
      out[rec.weight] += rec.multiplier;
      continue;
    }
    auto hist = detail::tail_histogram(decode_sade_number(rec.sade_number, sh.s, sh.n), tail, sh.n);
    for (std::size_t k = 0; k < hist.size(); ++k)
      if (hist[k]) out[rec.weight + static_cast<int>(k)] += rec.multiplier * hist[k];
  }
  return out;
}

}  // namespace plr

#endif  // PLR_SADE_HPP
