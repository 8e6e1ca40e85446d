#include "superint/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "superint/errors.hpp"

namespace superint {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxLanden = 64;

void check_modulus(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw InvalidParameter("elliptic modulus must lie in [0, 1]");
}

}  // namespace

double agm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("agm: arguments must be positive");
  for (int i = 0; i < kMaxLanden; ++i) {
    if (std::abs(a - b) <= kEps * a) break;
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

double complementary_modulus(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

double ellip_k(double k) {
  check_modulus(k);
  if (k == 1.0) throw DomainError("ellip_k: K(1) diverges");
  return std::numbers::pi / (2.0 * agm(1.0, complementary_modulus(k)));
}

JacobiTriple jacobi(double u, double k) {
  check_modulus(k);
  if (!std::isfinite(u)) throw EvaluationError("jacobi: non-finite argument");
  if (k < 1e-8) return {std::sin(u), std::cos(u), 1.0};
  if (k == 1.0) {
    const double s = 1.0 / std::cosh(u);
    return {std::tanh(u), s, s};
  }

  std::array<double, kMaxLanden> a{}, c{};
  a[0] = 1.0;
  double b = complementary_modulus(k);
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > kEps * a[n] && n + 1 < kMaxLanden) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  double phi_prev = phi;
  for (int i = n; i > 0; --i) {
    phi_prev = phi;
    phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  }
  const double sn = std::sin(phi), cn = std::cos(phi);
  // sqrt(1 - k^2 sn^2) is accurate while dn is not small; near dn ~ k' << 1
  // the Landen ratio cos(phi0) / cos(phi1 - phi0) avoids the cancellation.
  const double dn2 = (1.0 - k * sn) * (1.0 + k * sn);
  double dn = std::sqrt(std::max(0.0, dn2));
  if (dn2 < 1e-2 && n > 0) {
    const double denom = std::cos(phi_prev - phi);
    if (std::abs(denom) > 1e-3) dn = cn / denom;
  }
  return {sn, cn, dn};
}

JacobiSeries jacobi(const Taylor& u, double k) {
  const int order = u.order();
  const JacobiTriple t = jacobi(u.value(), k);
  // Power-series coefficients in (u - u0) from the ODE system.
  std::array<double, kMaxJetOrder + 1> s{}, c{}, d{};
  s[0] = t.sn;
  c[0] = t.cn;
  d[0] = t.dn;
  for (int m = 0; m < order; ++m) {
    double cd = 0.0, sd = 0.0, sc = 0.0;
    for (int i = 0; i <= m; ++i) {
      cd += c[i] * d[m - i];
      sd += s[i] * d[m - i];
      sc += s[i] * c[m - i];
    }
    s[m + 1] = cd / (m + 1);
    c[m + 1] = -sd / (m + 1);
    d[m + 1] = -k * k * sc / (m + 1);
  }
  // compose() wants derivatives, not coefficients.
  double fact = 1.0;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) fact *= m;
    s[m] *= fact;
    c[m] *= fact;
    d[m] *= fact;
  }
  return {compose(u, s), compose(u, c), compose(u, d)};
}

double lattice_distance(double u, double offset, double period) {
  const double r = std::remainder(u - offset, period);
  return std::abs(r);
}

double sn_pole_distance(double u, double k) {
  if (k == 1.0) return std::abs(u);
  return lattice_distance(u, 0.0, 2.0 * ellip_k(k));
}

SelftestReport elliptic_selftest(double dn_fault) {
  auto eval = [dn_fault](double u, double k) {
    JacobiTriple t = jacobi(u, k);
    t.dn += dn_fault;
    return t;
  };

  SelftestReport report;
  auto record = [&report](std::string name, double k, double err, double tol) {
    const bool ok = err <= tol;
    report.checks.push_back({std::move(name), k, err, tol, ok});
    report.pass = report.pass && ok;
  };

  const std::array<double, 11> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  constexpr double kH = 1e-4;
  for (double k : grid) {
    const double K = ellip_k(k);
    double pyth = 0.0, period = 0.0, deriv = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double u = -3.0 * K + 6.0 * K * i / 200.0;
      const JacobiTriple t = eval(u, k);
      pyth = std::max({pyth, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0),
                       std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0)});
      period = std::max(period, std::abs(eval(u + 4.0 * K, k).sn - t.sn));
      const JacobiTriple p = eval(u + kH, k), m = eval(u - kH, k);
      deriv = std::max({deriv, std::abs((p.sn - m.sn) / (2 * kH) - t.cn * t.dn),
                        std::abs((p.cn - m.cn) / (2 * kH) + t.sn * t.dn),
                        std::abs((p.dn - m.dn) / (2 * kH) + k * k * t.sn * t.cn)});
    }
    record("pythagorean", k, pyth, 1e-12);
    record("periodicity_4K", k, period, 1e-10);
    record("derivative", k, deriv, 1e-8);
  }

  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> ud(-20.0, 20.0), kd(0.0, 1.0);
  double pyth = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = ud(gen), k = kd(gen);
    const JacobiTriple t = eval(u, k);
    pyth = std::max({pyth, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0),
                     std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0)});
  }
  record("pythagorean_random_1e4", -1.0, pyth, 1e-12);

  double lim0 = 0.0, lim1 = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double u = -5.0 + 0.1 * i;
    const JacobiTriple a = eval(u, 0.0), b = eval(u, 1.0);
    lim0 = std::max({lim0, std::abs(a.sn - std::sin(u)), std::abs(a.cn - std::cos(u)), std::abs(a.dn - 1.0)});
    const double sech = 1.0 / std::cosh(u);
    lim1 = std::max({lim1, std::abs(b.sn - std::tanh(u)), std::abs(b.cn - sech), std::abs(b.dn - sech)});
  }
  record("limit_k0_trig", 0.0, lim0, 1e-14);
  record("limit_k1_hyperbolic", 1.0, lim1, 1e-14);
  return report;
}

}  // namespace superint
