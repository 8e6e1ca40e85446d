#pragma once

#include <array>
#include <span>

namespace superint {

inline constexpr int kMaxJetOrder = 5;

/// Truncated bivariate Taylor polynomial
///
///   t(x0 + dx, y0 + dy) = sum_{a+b <= order} c[a][b] dx^a dy^b
///
/// Arithmetic on Taylor values propagates derivatives exactly (forward-mode
/// automatic differentiation of total degree `order`). Every analytic field in
/// the library is written once as a function of two Taylor arguments; values,
/// gradients and the order-5 jets needed by the compatibility conditions all
/// come from the same expression.
class Taylor {
 public:
  static constexpr int kCapacity = (kMaxJetOrder + 1) * (kMaxJetOrder + 2) / 2;

  Taylor() = default;
  Taylor(double constant, int order);

  static Taylor variable_x(double x0, int order);
  static Taylor variable_y(double y0, int order);

  int order() const { return order_; }
  double value() const { return c_[0]; }

  double coeff(int a, int b) const { return c_[index(a, b)]; }
  double& coeff(int a, int b) { return c_[index(a, b)]; }

  /// d^{a+b} t / dx^a dy^b at the expansion point.
  double partial(int a, int b) const;

  Taylor truncated(int order) const;

  /// Derivative series; the result has order one less (minimum 0).
  Taylor dx() const;
  Taylor dy() const;

  Taylor& operator+=(const Taylor& rhs);
  Taylor& operator-=(const Taylor& rhs);
  Taylor& operator*=(const Taylor& rhs);
  Taylor& operator/=(const Taylor& rhs);
  Taylor& operator+=(double s);
  Taylor& operator-=(double s);
  Taylor& operator*=(double s);
  Taylor& operator/=(double s);

  static constexpr int index(int a, int b) {
    const int d = a + b;
    return d * (d + 1) / 2 + b;
  }

 private:
  int order_ = 0;
  std::array<double, kCapacity> c_{};
};

Taylor operator-(const Taylor& t);
Taylor operator+(Taylor lhs, const Taylor& rhs);
Taylor operator-(Taylor lhs, const Taylor& rhs);
Taylor operator*(const Taylor& lhs, const Taylor& rhs);
Taylor operator/(const Taylor& lhs, const Taylor& rhs);
Taylor operator+(Taylor t, double s);
Taylor operator+(double s, Taylor t);
Taylor operator-(Taylor t, double s);
Taylor operator-(double s, const Taylor& t);
Taylor operator*(Taylor t, double s);
Taylor operator*(double s, Taylor t);
Taylor operator/(Taylor t, double s);
Taylor operator/(double s, const Taylor& t);

/// f(u) from the derivatives f^(m)(u0), m = 0..u.order(), with u0 = u.value().
Taylor compose(const Taylor& u, std::span<const double> derivatives);

Taylor sqrt(const Taylor& u);
Taylor pow(const Taylor& u, double p);
Taylor exp(const Taylor& u);
Taylor log(const Taylor& u);
Taylor sin(const Taylor& u);
Taylor cos(const Taylor& u);
Taylor sinh(const Taylor& u);
Taylor cosh(const Taylor& u);
Taylor tanh(const Taylor& u);
Taylor square(const Taylor& u);

}  // namespace superint
