#pragma once

#include <array>

#include "superint/taylor.hpp"

namespace superint {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Value and all partial derivatives d^{a+b}/dx^a dy^b with a + b <= order.
/// Mixed partials are stored once; layout is dense by total degree.
class Jet {
 public:
  explicit Jet(int order = 0);

  static Jet from_taylor(const Taylor& t);

  int order() const { return order_; }
  double value() const { return d_[0]; }

  /// Zero for a + b > order.
  double operator()(int a, int b) const;
  void set(int a, int b, double v);

  bool all_finite() const;

  // Shorthands used throughout the residual code.
  double x() const { return (*this)(1, 0); }
  double y() const { return (*this)(0, 1); }
  double xx() const { return (*this)(2, 0); }
  double xy() const { return (*this)(1, 1); }
  double yy() const { return (*this)(0, 2); }
  double xxx() const { return (*this)(3, 0); }
  double xxy() const { return (*this)(2, 1); }
  double xyy() const { return (*this)(1, 2); }
  double yyy() const { return (*this)(0, 3); }

  /// Number of stored partials for a given order: 10 at order 3, 21 at order 5.
  static constexpr int size(int order) { return (order + 1) * (order + 2) / 2; }

 private:
  int order_;
  std::array<double, Taylor::kCapacity> d_{};
};

}  // namespace superint
