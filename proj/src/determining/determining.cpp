#include "superint/determining.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace superint {

namespace {

double max_abs(std::initializer_list<double> terms) {
  double m = 0.0;
  for (double t : terms) m = std::max(m, std::abs(t));
  return m;
}

struct A10 {
  double a300, a210, a201, a120, a111, a102, a030, a021, a012, a003;
  explicit A10(const Cubic& A)
      : a300(A[0]), a210(A[1]), a201(A[2]), a120(A[3]), a111(A[4]),
        a102(A[5]), a030(A[6]), a021(A[7]), a012(A[8]), a003(A[9]) {}
};

/// The hbar^2 block, term by term.
std::array<double, 6> quantum_terms(const Cubic& A, const FPolyValues& f, const Jet& V, Point p) {
  const A10 a(A);
  return {f.f1 * V.xxx(), f.f2 * V.xxy(), f.f3 * V.xyy(), f.f4 * V.yyy(),
          8.0 * a.a300 * (p.x * V.y() - p.y * V.x()), 2.0 * (a.a210 * V.x() + a.a201 * V.y())};
}

}  // namespace

FPolyValues f_polys(const Cubic& A, Point p) {
  const A10 a(A);
  const double x = p.x, y = p.y;
  FPolyValues f;
  f.f1 = -a.a300 * y * y * y + a.a210 * y * y - a.a120 * y + a.a030;
  f.f2 = 3 * a.a300 * x * y * y - 2 * a.a210 * x * y + a.a201 * y * y + a.a120 * x - a.a111 * y + a.a021;
  f.f3 = -3 * a.a300 * x * x * y + a.a210 * x * x - 2 * a.a201 * x * y + a.a111 * x - a.a102 * y + a.a012;
  f.f4 = a.a300 * x * x * x + a.a201 * x * x + a.a102 * x + a.a003;

  f.f1y = -3 * a.a300 * y * y + 2 * a.a210 * y - a.a120;
  f.f1yy = -6 * a.a300 * y + 2 * a.a210;
  f.f2x = 3 * a.a300 * y * y - 2 * a.a210 * y + a.a120;
  f.f2y = 6 * a.a300 * x * y - 2 * a.a210 * x + 2 * a.a201 * y - a.a111;
  f.f2xy = 6 * a.a300 * y - 2 * a.a210;
  f.f2yy = 6 * a.a300 * x + 2 * a.a201;
  f.f3x = -6 * a.a300 * x * y + 2 * a.a210 * x - 2 * a.a201 * y + a.a111;
  f.f3y = -3 * a.a300 * x * x - 2 * a.a201 * x - a.a102;
  f.f3xx = -6 * a.a300 * y + 2 * a.a210;
  f.f3xy = -6 * a.a300 * x - 2 * a.a201;
  f.f4x = 3 * a.a300 * x * x + 2 * a.a201 * x + a.a102;
  f.f4xx = 6 * a.a300 * x + 2 * a.a201;
  return f;
}

std::array<Taylor, 4> f_polys(const Cubic& A, const Taylor& x, const Taylor& y) {
  const A10 a(A);
  return {
      -a.a300 * (y * y * y) + a.a210 * (y * y) - a.a120 * y + a.a030,
      3 * a.a300 * (x * y * y) - 2 * a.a210 * (x * y) + a.a201 * (y * y) + a.a120 * x - a.a111 * y + a.a021,
      -3 * a.a300 * (x * x * y) + a.a210 * (x * x) - 2 * a.a201 * (x * y) + a.a111 * x - a.a102 * y + a.a012,
      a.a300 * (x * x * x) + a.a201 * (x * x) + a.a102 * x + a.a003,
  };
}

Residual4 residual_classical(const Cubic& A, const Jet& V, const Jet& g1, const Jet& g2, Point p) {
  const FPolyValues f = f_polys(A, p);
  const double vx = V.x(), vy = V.y();
  Residual4 r;
  r[0] = {g1.value() * vx + g2.value() * vy, max_abs({g1.value() * vx, g2.value() * vy})};
  r[1] = {g1.x() - (3 * f.f1 * vx + f.f2 * vy), max_abs({g1.x(), 3 * f.f1 * vx, f.f2 * vy})};
  r[2] = {g2.y() - (f.f3 * vx + 3 * f.f4 * vy), max_abs({g2.y(), f.f3 * vx, 3 * f.f4 * vy})};
  r[3] = {g1.y() + g2.x() - 2 * (f.f2 * vx + f.f3 * vy),
          max_abs({g1.y(), g2.x(), 2 * f.f2 * vx, 2 * f.f3 * vy})};
  return r;
}

Residual4 residual_quantum(const Cubic& A, const Jet& V, const Jet& g1, const Jet& g2, double hbar, Point p) {
  Residual4 r = residual_classical(A, V, g1, g2, p);
  const FPolyValues f = f_polys(A, p);
  const double q = 0.25 * hbar * hbar;
  double corr = 0.0;
  for (double t : quantum_terms(A, f, V, p)) {
    corr += t;
    r[0].scale = std::max(r[0].scale, std::abs(q * t));
  }
  r[0].value -= q * corr;
  return r;
}

EquationValue residual_condnouv(const Cubic& A, const Jet& V, Point p) {
  const FPolyValues f = f_polys(A, p);
  EquationValue e;
  for (double t : quantum_terms(A, f, V, p)) {
    e.value += t;
    e.scale = std::max(e.scale, std::abs(t));
  }
  return e;
}

EquationValue residual_compatlin(const Cubic& A, const Jet& V, Point p) {
  const FPolyValues f = f_polys(A, p);
  const double terms[] = {
      -f.f3 * V.xxx(),
      (2 * f.f2 - 3 * f.f4) * V.xxy(),
      (-3 * f.f1 + 2 * f.f3) * V.xyy(),
      -f.f2 * V.yyy(),
      2 * (f.f2y - f.f3x) * V.xx(),
      2 * (-3 * f.f1y + f.f2x + f.f3y - 3 * f.f4x) * V.xy(),
      2 * (-f.f2y + f.f3x) * V.yy(),
      (-3 * f.f1yy + 2 * f.f2xy - f.f3xx) * V.x(),
      (-f.f2yy + 2 * f.f3xy - 3 * f.f4xx) * V.y(),
  };
  EquationValue e;
  for (double t : terms) {
    e.value += t;
    e.scale = std::max(e.scale, std::abs(t));
  }
  return e;
}

std::array<EquationValue, 2> residual_compatx(const Cubic& A, const Jet& V, double x) {
  const A10 a(A);
  const double v1 = V.x(), v2 = V.xx(), v3 = V.xxx();
  const double t0[] = {(a.a210 * x * x + a.a111 * x + a.a012) * v3, 4 * (2 * a.a210 * x + a.a111) * v2,
                       12 * a.a210 * v1};
  const double t1[] = {(3 * a.a300 * x * x + 2 * a.a201 * x + a.a102) * v3,
                       4 * (6 * a.a300 * x + 2 * a.a201) * v2, 36 * a.a300 * v1};
  std::array<EquationValue, 2> r;
  for (double t : t0) {
    r[0].value += t;
    r[0].scale = std::max(r[0].scale, std::abs(t));
  }
  for (double t : t1) {
    r[1].value += t;
    r[1].scale = std::max(r[1].scale, std::abs(t));
  }
  return r;
}

EquationValue residual_elliptique(const Jet& V, const EllipticConstants& c, double hbar, double) {
  const double v = V.value(), dv = V.x();
  const double lhs = hbar * hbar * dv * dv;
  const double rhs[] = {4 * v * v * v, c.alpha * v * v, c.beta * v, c.gamma};
  EquationValue e{lhs, std::abs(lhs)};
  for (double t : rhs) {
    e.value -= t;
    e.scale = std::max(e.scale, std::abs(t));
  }
  return e;
}

std::array<EquationValue, 2> residual_second_order(const Quadratic& B, const Jet& V, const Jet& g0, Point p) {
  const double x = p.x, y = p.y;
  const double b200 = B[0], b110 = B[1], b101 = B[2], b020 = B[3], b011 = B[4], b002 = B[5];
  const double q20 = b200 * y * y - b110 * y + b020;
  const double q11 = -2 * b200 * x * y + b110 * x - b101 * y + b011;
  const double q02 = b200 * x * x + b101 * x + b002;
  const double vx = V.x(), vy = V.y();
  return {EquationValue{g0.x() - (2 * q20 * vx + q11 * vy), max_abs({g0.x(), 2 * q20 * vx, q11 * vy})},
          EquationValue{g0.y() - (q11 * vx + 2 * q02 * vy), max_abs({g0.y(), q11 * vx, 2 * q02 * vy})}};
}

EquationValue residual_first_order(const LinearCoeffs& C, const Jet& V, Point p) {
  const double t[] = {C[0] * p.x * V.y(), -C[0] * p.y * V.x(), C[1] * V.x(), C[2] * V.y()};
  return {t[0] + t[1] + t[2] + t[3], max_abs({t[0], t[1], t[2], t[3]})};
}

}  // namespace superint
