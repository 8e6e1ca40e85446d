#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "superint/elliptic.hpp"
#include "superint/errors.hpp"

using namespace superint;

namespace {

double k_by_quadrature(double k) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
  return gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 15, 1e-14);
}

}  // namespace

TEST_CASE("agm basics") {
  CHECK(agm(1.0, 1.0) == 1.0);
  CHECK(agm(2.0, 0.3) == agm(0.3, 2.0));
  CHECK_THROWS_AS(agm(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(agm(1.0, -1.0), DomainError);
  const double k = 0.5;
  CHECK(agm(1.0, std::sqrt(1 - k * k)) == doctest::Approx(std::numbers::pi / (2 * k_by_quadrature(k))).epsilon(1e-13));
}

TEST_CASE("complete integral against quadrature and boost") {
  CHECK(ellip_k(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(std::abs(ellip_k(0.5) - k_by_quadrature(0.5)) <= 1e-10);
  double prev = ellip_k(0.0);
  for (int i = 1; i < 100; ++i) {
    const double k = i / 100.0;
    const double K = ellip_k(k);
    CHECK(K > prev);
    CHECK(K == doctest::Approx(boost::math::ellint_1(k)).epsilon(1e-12));
    prev = K;
  }
  CHECK_THROWS_AS(ellip_k(1.0), DomainError);
  CHECK_THROWS_AS(ellip_k(1.5), InvalidParameter);
}

TEST_CASE("jacobi against boost and degenerate limits") {
  for (double k : {0.0, 1e-9, 0.1, 0.5, 0.6, 0.9, 0.99, 0.999999, 1.0}) {
    CHECK(jacobi(0.0, k).sn == 0.0);
    CHECK(jacobi(0.0, k).cn == 1.0);
    CHECK(jacobi(0.0, k).dn == doctest::Approx(1.0).epsilon(1e-15));
  }
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ud(-15.0, 15.0), kd(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double u = ud(gen), k = kd(gen);
    double cn = 0, dn = 0;
    const double sn = boost::math::jacobi_elliptic(k, u, &cn, &dn);
    const JacobiTriple t = jacobi(u, k);
    worst = std::max({worst, std::abs(t.sn - sn), std::abs(t.cn - cn), std::abs(t.dn - dn)});
  }
  CHECK(worst <= 1e-12);

  for (double u : {-2.0, 0.3, 1.7}) {
    const JacobiTriple a = jacobi(u, 0.0), b = jacobi(u, 1.0);
    CHECK(a.sn == std::sin(u));
    CHECK(a.cn == std::cos(u));
    CHECK(b.sn == std::tanh(u));
    CHECK(b.cn == doctest::Approx(1.0 / std::cosh(u)).epsilon(1e-15));
  }
}

TEST_CASE("sn derivative by central differences") {
  const double u = 0.7, k = 0.6, h = 1e-5;
  const JacobiTriple t = jacobi(u, k);
  const double fd = (jacobi(u + h, k).sn - jacobi(u - h, k).sn) / (2 * h);
  CHECK(std::abs(fd - t.cn * t.dn) <= 1e-8);
}

TEST_CASE("taylor jacobi matches finite differences of the scalar routine") {
  const double k = 0.6, u0 = 0.9, h = 1e-3;
  const JacobiSeries s = jacobi(Taylor::variable_x(u0, 3), k);
  auto sn = [&](double u) { return jacobi(u, k).sn; };
  const double d3 = (sn(u0 + 2 * h) - 2 * sn(u0 + h) + 2 * sn(u0 - h) - sn(u0 - 2 * h)) / (2 * h * h * h);
  CHECK(s.sn.partial(1, 0) == doctest::Approx(jacobi(u0, k).cn * jacobi(u0, k).dn).epsilon(1e-13));
  CHECK(s.sn.partial(3, 0) == doctest::Approx(d3).epsilon(1e-5));
}

TEST_CASE("pole map of 1/sn^2") {
  const double k = 0.7, K = ellip_k(k);
  CHECK(sn_pole_distance(2 * K, k) == doctest::Approx(0.0).scale(1.0));
  CHECK(sn_pole_distance(-4 * K + 0.01, k) == doctest::Approx(0.01));
  CHECK(std::abs(jacobi(2 * K, k).sn) <= 1e-14);
}

TEST_CASE("self-test passes and detects a dn fault") {
  const SelftestReport ok = elliptic_selftest();
  for (const auto& c : ok.checks) INFO(c.name, " k=", c.k, " err=", c.max_error);
  CHECK(ok.pass);
  CHECK_FALSE(elliptic_selftest(1e-6).pass);
  int grid_points = 0;
  for (const auto& c : ok.checks)
    if (c.name == "pythagorean") ++grid_points;
  CHECK(grid_points == 11);
}
