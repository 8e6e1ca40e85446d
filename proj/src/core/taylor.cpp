#include "superint/taylor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace superint {

namespace {

int size_for(int order) { return (order + 1) * (order + 2) / 2; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Taylor::Taylor(double constant, int order) : order_(order) {
  assert(order >= 0 && order <= kMaxJetOrder);
  c_[0] = constant;
}

Taylor Taylor::variable_x(double x0, int order) {
  Taylor t(x0, order);
  if (order > 0) t.coeff(1, 0) = 1.0;
  return t;
}

Taylor Taylor::variable_y(double y0, int order) {
  Taylor t(y0, order);
  if (order > 0) t.coeff(0, 1) = 1.0;
  return t;
}

double Taylor::partial(int a, int b) const {
  if (a + b > order_) return 0.0;
  return factorial(a) * factorial(b) * coeff(a, b);
}

Taylor Taylor::truncated(int order) const {
  Taylor t(*this);
  t.order_ = std::min(order, order_);
  for (int i = size_for(t.order_); i < kCapacity; ++i) t.c_[i] = 0.0;
  return t;
}

Taylor Taylor::dx() const {
  Taylor t(0.0, std::max(order_ - 1, 0));
  for (int d = 0; d < order_; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      t.coeff(a, b) = (a + 1) * coeff(a + 1, b);
    }
  return t;
}

Taylor Taylor::dy() const {
  Taylor t(0.0, std::max(order_ - 1, 0));
  for (int d = 0; d < order_; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      t.coeff(a, b) = (b + 1) * coeff(a, b + 1);
    }
  return t;
}

Taylor& Taylor::operator+=(const Taylor& rhs) {
  order_ = std::min(order_, rhs.order_);
  const int n = size_for(order_);
  for (int i = 0; i < n; ++i) c_[i] += rhs.c_[i];
  for (int i = n; i < kCapacity; ++i) c_[i] = 0.0;
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& rhs) {
  order_ = std::min(order_, rhs.order_);
  const int n = size_for(order_);
  for (int i = 0; i < n; ++i) c_[i] -= rhs.c_[i];
  for (int i = n; i < kCapacity; ++i) c_[i] = 0.0;
  return *this;
}

Taylor& Taylor::operator*=(const Taylor& rhs) {
  *this = *this * rhs;
  return *this;
}

Taylor& Taylor::operator/=(const Taylor& rhs) {
  *this = *this / rhs;
  return *this;
}

Taylor& Taylor::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Taylor& Taylor::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Taylor& Taylor::operator*=(double s) {
  for (double& c : c_) c *= s;
  return *this;
}

Taylor& Taylor::operator/=(double s) {
  for (double& c : c_) c /= s;
  return *this;
}

Taylor operator-(const Taylor& t) { return t * -1.0; }
Taylor operator+(Taylor lhs, const Taylor& rhs) { return lhs += rhs; }
Taylor operator-(Taylor lhs, const Taylor& rhs) { return lhs -= rhs; }

Taylor operator*(const Taylor& lhs, const Taylor& rhs) {
  const int n = std::min(lhs.order(), rhs.order());
  Taylor out(0.0, n);
  for (int d = 0; d <= n; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      double sum = 0.0;
      for (int a1 = 0; a1 <= a; ++a1)
        for (int b1 = 0; b1 <= b; ++b1) sum += lhs.coeff(a1, b1) * rhs.coeff(a - a1, b - b1);
      out.coeff(a, b) = sum;
    }
  return out;
}

Taylor operator/(const Taylor& lhs, const Taylor& rhs) {
  // Solve q * rhs = lhs degree by degree.
  const int n = std::min(lhs.order(), rhs.order());
  const double r0 = rhs.value();
  Taylor q(0.0, n);
  for (int d = 0; d <= n; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      double sum = lhs.coeff(a, b);
      for (int a1 = 0; a1 <= a; ++a1)
        for (int b1 = 0; b1 <= b; ++b1) {
          if (a1 == 0 && b1 == 0) continue;
          sum -= rhs.coeff(a1, b1) * q.coeff(a - a1, b - b1);
        }
      q.coeff(a, b) = sum / r0;
    }
  return q;
}

Taylor operator+(Taylor t, double s) { return t += s; }
Taylor operator+(double s, Taylor t) { return t += s; }
Taylor operator-(Taylor t, double s) { return t -= s; }
Taylor operator-(double s, const Taylor& t) { return -t + s; }
Taylor operator*(Taylor t, double s) { return t *= s; }
Taylor operator*(double s, Taylor t) { return t *= s; }
Taylor operator/(Taylor t, double s) { return t /= s; }
Taylor operator/(double s, const Taylor& t) { return Taylor(s, t.order()) / t; }

Taylor compose(const Taylor& u, std::span<const double> derivatives) {
  const int n = u.order();
  assert(static_cast<int>(derivatives.size()) > n);
  Taylor delta = u;
  delta.coeff(0, 0) = 0.0;
  Taylor out(derivatives[0], n);
  Taylor power(1.0, n);
  double inv_fact = 1.0;
  for (int m = 1; m <= n; ++m) {
    power = power * delta;
    inv_fact /= m;
    out += power * (derivatives[m] * inv_fact);
  }
  return out;
}

namespace {

using Derivs = std::array<double, kMaxJetOrder + 1>;

}  // namespace

Taylor pow(const Taylor& u, double p) {
  const double u0 = u.value();
  Derivs d{};
  double falling = 1.0;
  for (int m = 0; m <= u.order(); ++m) {
    d[m] = falling * std::pow(u0, p - m);
    falling *= (p - m);
  }
  return compose(u, d);
}

Taylor sqrt(const Taylor& u) { return pow(u, 0.5); }

Taylor exp(const Taylor& u) {
  Derivs d{};
  d.fill(std::exp(u.value()));
  return compose(u, d);
}

Taylor log(const Taylor& u) {
  const double u0 = u.value();
  Derivs d{};
  d[0] = std::log(u0);
  double f = 1.0;
  for (int m = 1; m <= u.order(); ++m) {
    d[m] = ((m % 2 == 1) ? f : -f) / std::pow(u0, m);
    f *= m;
  }
  return compose(u, d);
}

Taylor sin(const Taylor& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cycle[4] = {s, c, -s, -c};
  Derivs d{};
  for (int m = 0; m <= u.order(); ++m) d[m] = cycle[m % 4];
  return compose(u, d);
}

Taylor cos(const Taylor& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cycle[4] = {c, -s, -c, s};
  Derivs d{};
  for (int m = 0; m <= u.order(); ++m) d[m] = cycle[m % 4];
  return compose(u, d);
}

Taylor sinh(const Taylor& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  Derivs d{};
  for (int m = 0; m <= u.order(); ++m) d[m] = (m % 2 == 0) ? s : c;
  return compose(u, d);
}

Taylor cosh(const Taylor& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  Derivs d{};
  for (int m = 0; m <= u.order(); ++m) d[m] = (m % 2 == 0) ? c : s;
  return compose(u, d);
}

Taylor tanh(const Taylor& u) { return sinh(u) / cosh(u); }

Taylor square(const Taylor& u) { return u * u; }

}  // namespace superint
