#ifndef PLR_DISTRIBUTION_HPP
#define PLR_DISTRIBUTION_HPP

#include <ostream>
#include <vector>

#include "plr/types.hpp"

namespace plr {

/// Exact counts indexed by weight m = 0..rs.
class WeightDistribution {
 public:
  WeightDistribution() = default;
  explicit WeightDistribution(Shape shape)
      : shape_(shape), counts_(static_cast<std::size_t>(shape.cells() + 1)) {}
  WeightDistribution(Shape shape, std::vector<BigCount> counts) : WeightDistribution(shape) {
    if (counts.size() > counts_.size()) throw ShapeError("more weights than cells");
    for (std::size_t m = 0; m < counts.size(); ++m) counts_[m] = std::move(counts[m]);
  }

  /// 1 at m = 0, 0 elsewhere.
  static WeightDistribution empty_only(Shape shape) {
    WeightDistribution d(shape);
    d.counts_[0] = 1;
    return d;
  }

  const Shape& shape() const { return shape_; }
  int max_weight() const { return static_cast<int>(counts_.size()) - 1; }
  const std::vector<BigCount>& counts() const { return counts_; }

  /// Weights outside 0..rs yield 0.
  BigCount at(int m) const {
    if (m < 0 || m > max_weight()) return 0;
    return counts_[m];
  }
  BigCount& operator[](int m) { return counts_.at(static_cast<std::size_t>(m)); }
  const BigCount& operator[](int m) const { return counts_.at(static_cast<std::size_t>(m)); }

  BigCount total() const {
    BigCount t = 0;
    for (const auto& c : counts_) t += c;
    return t;
  }

  WeightDistribution& operator+=(const WeightDistribution& o) {
    if (!(shape_ == o.shape_)) throw ShapeError("adding distributions of different shapes");
    for (std::size_t m = 0; m < counts_.size(); ++m) counts_[m] += o.counts_[m];
    return *this;
  }

  WeightDistribution& operator*=(const BigCount& k) {
    for (auto& c : counts_) c *= k;
    return *this;
  }

  friend bool operator==(const WeightDistribution& a, const WeightDistribution& b) {
    return a.shape_ == b.shape_ && a.counts_ == b.counts_;
  }

  friend std::ostream& operator<<(std::ostream& os, const WeightDistribution& d) {
    os << '[';
    for (std::size_t m = 0; m < d.counts_.size(); ++m) os << (m ? ", " : "") << d.counts_[m];
    return os << ']';
  }

 private:
  Shape shape_;
  std::vector<BigCount> counts_;
};

}  // namespace plr

#endif  // PLR_DISTRIBUTION_HPP
