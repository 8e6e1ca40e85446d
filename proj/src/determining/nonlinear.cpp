#include "superint/nonlinear.hpp"

#include <cmath>
#include <stdexcept>

#include "superint/determining.hpp"
#include "superint/errors.hpp"
#include "superint/finite_difference.hpp"

namespace superint {

namespace {

constexpr int kAuxOrder = 2;

Taylor from_jet(const Jet& j) {
  Taylor t(0.0, j.order());
  for (int d = 0; d <= j.order(); ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      t.coeff(a, b) = j(a, b) / (std::tgamma(a + 1.0) * std::tgamma(b + 1.0));
    }
  return t;
}

/// phi1, phi2, h1, h2, h3 as series about (x, y); V must carry order + 3.
struct AuxSeries {
  Taylor phi1, phi2, h1, h2, h3;
};

AuxSeries aux_series(const TaylorExpr& V, const Cubic& A, double hbar, const Taylor& x, const Taylor& y) {
  const Taylor v = V(x, y);
  const Taylor vx = v.dx(), vy = v.dy();
  if (vx.value() == 0.0) throw DomainError("nonlinear_aux: V_x vanishes (phi1 undefined)");
  const Taylor vxx = vx.dx();
  const Taylor vxxx = vxx.dx(), vxxy = vxx.dy(), vxyy = vx.dy().dy(), vyyy = vy.dy().dy();
  const auto f = f_polys(A, x, y);
  const Taylor corr = f[0] * vxxx + f[1] * vxxy + f[2] * vxyy + f[3] * vyyy +
                      8.0 * A[0] * (x * vy - y * vx) + 2.0 * (A[1] * vx + A[2] * vy);
  AuxSeries s;
  s.phi1 = vy / vx;
  s.phi2 = hbar == 0.0 ? Taylor(0.0, corr.order()) : -hbar * hbar * corr / (4.0 * vx);
  s.h1 = 3.0 * f[0] * vx + f[1] * vy;
  s.h2 = f[2] * vx + 3.0 * f[3] * vy;
  s.h3 = 2.0 * (f[1] * vx + f[2] * vy);
  return s;
}

void set_flags(NonlinearAux& aux, const NonlinearOptions& opt) {
  const Taylor& p = aux.phi1;
  const double phi = p.value(), px = p.partial(1, 0), py = p.partial(0, 1), pxy = p.partial(1, 1);
  aux.d1_value = px + phi * py;
  aux.d2_value = pxy * phi - px * py;
  const double s1 = std::max(std::abs(px), std::abs(phi * py));
  const double s2 = std::max(std::abs(pxy * phi), std::abs(px * py));
  aux.d1 = std::abs(aux.d1_value) <= opt.degeneracy_tol * (1.0 + s1);
  aux.d2 = std::abs(aux.d2_value) <= opt.degeneracy_tol * (1.0 + s2);
}

}  // namespace

NonlinearAux nonlinear_aux(const TaylorExpr& V, const Cubic& A, double hbar, Point p, const NonlinearOptions& opt) {
  const int n = kAuxOrder + 3;
  const AuxSeries s = aux_series(V, A, hbar, Taylor::variable_x(p.x, n), Taylor::variable_y(p.y, n));
  NonlinearAux aux;
  aux.point = p;
  aux.classical = hbar == 0.0;
  aux.phi1 = s.phi1.truncated(kAuxOrder);
  aux.phi2 = s.phi2.truncated(kAuxOrder);
  aux.h = {s.h1.truncated(kAuxOrder), s.h2.truncated(kAuxOrder), s.h3.truncated(kAuxOrder)};
  set_flags(aux, opt);
  return aux;
}

NonlinearAux nonlinear_aux_fd(const TaylorExpr& V, const Cubic& A, double hbar, Point p, double h,
                              const NonlinearOptions& opt) {
  auto pointwise = [&](Point q) {
    return aux_series(V, A, hbar, Taylor::variable_x(q.x, 3), Taylor::variable_y(q.y, 3));
  };
  auto fd = [&](auto member) {
    return from_jet(fd_jet([&](Point q) { return (pointwise(q).*member).value(); }, p, kAuxOrder, h));
  };
  NonlinearAux aux;
  aux.point = p;
  aux.classical = hbar == 0.0;
  aux.phi1 = fd(&AuxSeries::phi1);
  aux.phi2 = fd(&AuxSeries::phi2);
  aux.h = {fd(&AuxSeries::h1), fd(&AuxSeries::h2), fd(&AuxSeries::h3)};
  set_flags(aux, opt);
  return aux;
}

std::optional<double> residual_compatnl(const NonlinearAux& aux, int variant, const NonlinearOptions& opt) {
  if (variant < 1 || variant > 3) throw std::invalid_argument("residual_compatnl: variant must be 1, 2 or 3");
  if (aux.degenerate()) return std::nullopt;
  for (int m : opt.h_map)
    if (m < 1 || m > 3) throw std::invalid_argument("residual_compatnl: h mapping must name h1, h2 or h3");

  const Taylor& phi1 = aux.phi1;
  const Taylor& phi2 = aux.phi2;
  const Taylor& h2 = aux.h[1];
  const Taylor& h3 = aux.h[2];
  const Taylor& h4 = aux.h[opt.h_map[0] - 1];
  const Taylor& h5 = aux.h[opt.h_map[1] - 1];
  const Taylor& h6 = aux.h[opt.h_map[2] - 1];
  const Taylor p1x = phi1.dx(), p1y = phi1.dy(), p2x = phi2.dx(), p2y = phi2.dy();
  const Taylor denom = p1x + phi1 * p1y;

  switch (variant) {
    case 1: {
      const Taylor num = phi1 * (h3 * phi1 + h2 * phi1 * phi1 + phi1 * p2y + p2x + h4);
      return -p2x.value() + (num / denom).dx().value() - h4.value();
    }
    case 2: {
      const Taylor num = phi1 * phi1 * h5 + phi1 * p2y + phi1 * h6 + p2x + h4;
      return (num / denom).dy().value() + h5.value();
    }
    default: {
      const double f = phi1.value(), fx = p1x.value(), fy = p1y.value(), fxy = phi1.partial(1, 1);
      const double gx = p2x.value(), gy = p2y.value(), gxy = phi2.partial(1, 1);
      const double lhs = h4.value() * (fxy + fy * fy) + h5.value() * (f * f * fxy - fx * fx - 2 * f * fx * fy) +
                         h6.value() * (f * fxy - fx * fy) -
                         (h4.partial(0, 1) + f * h5.partial(1, 0)) * (fx + f * fy);
      const double rhs = -gx * (fxy + fy * fy) + gy * (fx * fy - fxy * f) + gxy * (fx + f * fy);
      return lhs - rhs;
    }
  }
}

}  // namespace superint
