#include <doctest.h>

#include <cmath>
#include <set>

#include "superint/errors.hpp"
#include "superint/field.hpp"
#include "superint/finite_difference.hpp"
#include "superint/sampling.hpp"
#include "superint/taylor.hpp"

using namespace superint;

TEST_CASE("taylor arithmetic reproduces hand derivatives") {
  // f = x^2 y at (1, 1)
  const Taylor x = Taylor::variable_x(1.0, 3), y = Taylor::variable_y(1.0, 3);
  const Taylor f = x * x * y;
  CHECK(f.partial(0, 0) == doctest::Approx(1.0));
  CHECK(f.partial(1, 0) == doctest::Approx(2.0));
  CHECK(f.partial(0, 1) == doctest::Approx(1.0));
  CHECK(f.partial(2, 0) == doctest::Approx(2.0));
  CHECK(f.partial(1, 1) == doctest::Approx(2.0));
  CHECK(f.partial(0, 2) == doctest::Approx(0.0));
  CHECK(f.partial(2, 1) == doctest::Approx(2.0));
  CHECK(f.partial(3, 0) == doctest::Approx(0.0));
}

TEST_CASE("taylor elementary functions match closed-form derivatives") {
  const double x0 = 0.37;
  const Taylor x = Taylor::variable_x(x0, 5);
  const Taylor s = sin(x), e = exp(x), l = log(x), t = tanh(x), p = pow(x, -2.0);
  for (int m = 0; m <= 5; ++m) {
    const double sin_m[4] = {std::sin(x0), std::cos(x0), -std::sin(x0), -std::cos(x0)};
    CHECK(s.partial(m, 0) == doctest::Approx(sin_m[m % 4]).epsilon(1e-13));
    CHECK(e.partial(m, 0) == doctest::Approx(std::exp(x0)).epsilon(1e-13));
  }
  CHECK(l.partial(3, 0) == doctest::Approx(2.0 / std::pow(x0, 3)).epsilon(1e-13));
  CHECK(p.partial(3, 0) == doctest::Approx(-24.0 / std::pow(x0, 5)).epsilon(1e-13));
  const double sech2 = 1.0 / std::pow(std::cosh(x0), 2);
  CHECK(t.partial(1, 0) == doctest::Approx(sech2).epsilon(1e-13));
  CHECK(t.partial(2, 0) == doctest::Approx(-2.0 * std::tanh(x0) * sech2).epsilon(1e-13));
}

TEST_CASE("taylor division inverts multiplication") {
  const Taylor x = Taylor::variable_x(0.8, 5), y = Taylor::variable_y(-0.3, 5);
  const Taylor a = x * x + y * 3.0 + 2.0, b = exp(x * y) + 1.0;
  const Taylor q = (a * b) / b;
  for (int d = 0; d <= 5; ++d)
    for (int j = 0; j <= d; ++j) CHECK(q.coeff(d - j, j) == doctest::Approx(a.coeff(d - j, j)).epsilon(1e-13));
}

TEST_CASE("jet stores exactly the requested partials") {
  CHECK(Jet::size(3) == 10);
  CHECK(Jet::size(5) == 21);
  Jet j(2);
  j.set(1, 1, 4.0);
  CHECK(j.xy() == 4.0);
  CHECK(j(2, 1) == 0.0);
}

TEST_CASE("fd_jet: constant and polynomial fields") {
  const Jet c = fd_jet([](Point) { return 3.5; }, {0.2, -0.4}, 3);
  CHECK(c.value() == 3.5);
  for (int d = 1; d <= 3; ++d)
    for (int b = 0; b <= d; ++b) CHECK(c(d - b, b) == doctest::Approx(0.0).scale(1.0));

  const Jet j = fd_jet([](Point p) { return p.x * p.x * p.y; }, {1.0, 1.0}, 2, 1e-3);
  CHECK(j.value() == doctest::Approx(1.0));
  CHECK(j.x() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(j.y() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j.xx() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(j.xy() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(j.yy() == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("fd_jet converges at second order against an analytic jet") {
  const FieldPtr f = make_field([](const Taylor& x, const Taylor& y) { return sin(x * 1.3) * exp(y * 0.7); });
  const Point p{0.4, -0.2};
  const Jet exact = f->jet(p, 3);
  auto err = [&](double h) {
    const Jet approx = fd_jet(*f, p, 3, h);
    double e = 0.0;
    for (int d = 0; d <= 3; ++d)
      for (int b = 0; b <= d; ++b) e = std::max(e, std::abs(approx(d - b, b) - exact(d - b, b)));
    return e;
  };
  const double order = std::log2(err(0.02) / err(0.01));
  CHECK(order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("fd_jet errors") {
  CHECK_THROWS_AS(fd_jet([](Point p) { return 1.0 / p.x; }, {0.01, 0.0}, 3, 0.01, [](Point p) { return p.x > 0.0; }),
                  DomainError);
  CHECK_THROWS_AS(fd_jet([](Point) { return std::nan(""); }, {0.0, 0.0}, 1), EvaluationError);
}

TEST_CASE("sample_domain is deterministic and honours the margin") {
  const Domain plane{{-1, 1, -1, 1}, {}};
  const SampleSet a = sample_domain(plane, 4, 7), b = sample_domain(plane, 4, 7);
  REQUIRE(a.points.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.points[i].x == b.points[i].x);
    CHECK(a.points[i].y == b.points[i].y);
  }
  const Domain half{{-1, 1, -1, 1}, [](Point p) { return p.x; }};
  const SampleSet s = sample_domain(half, 100, 3, 0.1);
  for (const Point& p : s.points) CHECK(p.x >= 0.1);

  const Domain thin{{-1, 1, -1, 1}, [](Point p) { return 1e-5 - std::abs(p.x); }};
  CHECK_THROWS_AS(sample_domain(thin, 10, 1, 0.0), SamplingError);
}
