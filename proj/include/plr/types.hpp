#ifndef PLR_TYPES_HPP
#define PLR_TYPES_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace plr {

using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SizeLimitError : std::length_error {
  using std::length_error::length_error;
};

/// Raised when an exact division or other internal consistency check fails.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

inline BigCount factorial(int t) {
  BigCount f = 1;
  for (int i = 2; i <= t; ++i) f *= i;
  return f;
}

/// n (n-1) ... (n-k+1)
inline BigCount falling_factorial(long long n, int k) {
  BigCount f = 1;
  for (int i = 0; i < k; ++i) f *= (n - i);
  return f;
}

inline BigCount binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return falling_factorial(n, k) / factorial(k);
}

inline BigCount exact_div(const BigCount& num, const BigCount& den, const char* what) {
  BigCount q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw InvariantError(std::string("inexact division in ") + what);
  return q;
}

struct Shape {
  int r = 1;
  int s = 1;
  int n = 1;

  Shape() = default;
  Shape(int rows, int cols, int symbols) : r(rows), s(cols), n(symbols) {
    if (r < 1 || s < 1 || n < 1) throw ShapeError("shape dimensions must be positive");
  }

  int cells() const { return r * s; }
  int dim(int k) const { return k == 0 ? r : (k == 1 ? s : n); }

  friend bool operator==(const Shape&, const Shape&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Shape& sh) {
    return os << sh.r << '.' << sh.s << '.' << sh.n;
  }
};

/// 0-based (row, column, symbol).
struct Entry {
  int row = 0;
  int col = 0;
  int symbol = 0;

  int operator[](int k) const { return k == 0 ? row : (k == 1 ? col : symbol); }
  friend auto operator<=>(const Entry&, const Entry&) = default;
};

/// An r x s array over [n] with at most one copy of each symbol per row and
/// per column. Cells store symbol+1, with 0 marking an empty cell.
class PartialLatinRectangle {
 public:
  explicit PartialLatinRectangle(Shape shape)
      : shape_(shape), cells_(static_cast<std::size_t>(shape.cells()), 0) {}

  PartialLatinRectangle(Shape shape, const std::vector<Entry>& entries)
      : PartialLatinRectangle(shape) {
    for (const auto& e : entries) place(e);
  }

  /// Rows of 1-based symbols, 0 for empty.
  static PartialLatinRectangle from_rows(Shape shape, const std::vector<std::vector<int>>& rows) {
    if (static_cast<int>(rows.size()) != shape.r) throw ShapeError("row count mismatch");
    PartialLatinRectangle L(shape);
    for (int i = 0; i < shape.r; ++i) {
      if (static_cast<int>(rows[i].size()) != shape.s) throw ShapeError("column count mismatch");
      for (int j = 0; j < shape.s; ++j)
        if (rows[i][j] != 0) L.place({i, j, rows[i][j] - 1});
    }
    return L;
  }

  /// Parses rows separated by '/' or newlines; symbols 1-based, '.' for empty.
  /// Example: "1.2/.21".  Symbols above 9 are not supported by this format.
  static PartialLatinRectangle parse(Shape shape, const std::string& text) {
    std::vector<std::vector<int>> rows(1);
    for (char c : text) {
      if (c == '/' || c == '\n') {
        rows.emplace_back();
      } else if (c == '.') {
        rows.back().push_back(0);
      } else if (c >= '1' && c <= '9') {
        rows.back().push_back(c - '0');
      } else if (c != ' ') {
        throw ShapeError(std::string("unexpected character in PLR text: ") + c);
      }
    }
    return from_rows(shape, rows);
  }

  const Shape& shape() const { return shape_; }

  std::optional<int> at(int i, int j) const {
    int v = cells_[index(i, j)];
    if (v == 0) return std::nullopt;
    return v - 1;
  }

  /// Raw cell value: 0 empty, otherwise symbol+1.
  int raw(int i, int j) const { return cells_[index(i, j)]; }

  void place(const Entry& e) {
    check_bounds(e);
    if (cells_[index(e.row, e.col)] != 0) throw ShapeError("cell already filled");
    for (int j = 0; j < shape_.s; ++j)
      if (cells_[index(e.row, j)] == e.symbol + 1) throw ShapeError("symbol repeated in row");
    for (int i = 0; i < shape_.r; ++i)
      if (cells_[index(i, e.col)] == e.symbol + 1) throw ShapeError("symbol repeated in column");
    cells_[index(e.row, e.col)] = static_cast<std::uint8_t>(e.symbol + 1);
  }

  void clear(int i, int j) { cells_[index(i, j)] = 0; }

  int weight() const {
    int w = 0;
    for (auto v : cells_) w += (v != 0);
    return w;
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (int i = 0; i < shape_.r; ++i)
      for (int j = 0; j < shape_.s; ++j)
        if (auto v = cells_[index(i, j)]) out.push_back({i, j, v - 1});
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < shape_.r; ++i) {
      if (i) os << '/';
      for (int j = 0; j < shape_.s; ++j) {
        int v = cells_[index(i, j)];
        if (v == 0)
          os << '.';
        else if (v <= 9)
          os << v;
        else
          os << '(' << v << ')';
      }
    }
    return os.str();
  }

  friend bool operator==(const PartialLatinRectangle& a, const PartialLatinRectangle& b) {
    return a.shape_ == b.shape_ && a.cells_ == b.cells_;
  }
  friend bool operator<(const PartialLatinRectangle& a, const PartialLatinRectangle& b) {
    return a.cells_ < b.cells_;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * shape_.s + j); }

  void check_bounds(const Entry& e) const {
    if (e.row < 0 || e.row >= shape_.r || e.col < 0 || e.col >= shape_.s || e.symbol < 0 ||
        e.symbol >= shape_.n)
      throw ShapeError("entry out of shape bounds");
  }

  Shape shape_;
  std::vector<std::uint8_t> cells_;
};

using PLR = PartialLatinRectangle;

}  // namespace plr

#endif  // PLR_TYPES_HPP
