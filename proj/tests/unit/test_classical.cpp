#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "superint/classical.hpp"
#include "superint/errors.hpp"
#include "superint/verification.hpp"

using namespace superint;

namespace {

IntegralSpec monomial(int i, int j, int k) {
  IntegralSpec s;
  s.name = "m";
  s.order = i + j + k;
  if (s.order == 3) s.a(i, j, k) = 1.0;
  if (s.order == 2) s.b(i, j, k) = 1.0;
  if (s.order == 1) s.C[linear_index(i, j, k)] = 1.0;
  return s;
}

std::vector<PhasePoint> random_states(const PotentialEntry& e, int n, std::uint64_t seed) {
  const SampleSet s = entry_samples(e, n, seed);
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PhasePoint> out;
  for (const Point& p : s.points) {
    const double p1 = u(rng);
    const double p2 = u(rng);
    out.push_back({p.x, p.y, p1, p2});
  }
  return out;
}

}  // namespace

TEST_CASE("observable values") {
  CHECK(eval_observable(monomial(1, 0, 0), {1, 0, 0, 1}) == 1.0);
  CHECK(eval_observable(monomial(0, 0, 3), {0.4, 0.1, -0.3, 2.0}) == 8.0);
  const double a = 1.7;
  const PotentialEntry e = instantiate(Family::inverse_sq, {{"a", a}});
  const PhasePoint s{1, 1, 0.3, 0.7};
  const double L = s.x * s.p2 - s.y * s.p1;
  CHECK(eval_observable(e.integral("X1"), s) == doctest::Approx(L * L * s.p2 + 2 * a * s.y * s.y / (s.x * s.x) * s.p2));
  CHECK_THROWS_AS(eval_observable(e.integral("X1"), {0, 1, 0.3, 0.7}), DomainError);
}

TEST_CASE("free motion conserves every polynomial in L, p1, p2") {
  const PotentialEntry e = instantiate(Family::free);
  const Cubic mix{0.3, -1.1, 0.7, 2.0, 0.4, -0.9, 1.3, 0.2, -0.5, 0.8};
  IntegralSpec s;
  s.A = mix;
  s.g1.add(0.7, constant_field(1.0), "1");
  s.g2.add(-2.0, constant_field(1.0), "1");
  for (const PhasePoint& st : random_states(e, 20, 3)) CHECK(std::abs(poisson_bracket_H(e, s, st)) <= 1e-13);
}

TEST_CASE("closed-form bracket against the finite-difference oracle") {
  const PotentialEntry cou = instantiate(Family::coulomb);
  for (const PhasePoint& st : random_states(cou, 50, 8)) {
    CHECK(std::abs(poisson_bracket_H(cou, cou.integral("LRL1"), st)) <= 1e-12);
    CHECK(std::abs(fd_poisson_bracket_H(cou, cou.integral("LRL2"), st)) <= 1e-6);
  }
  for (Family f : {Family::free, Family::coulomb, Family::oscillator, Family::linear_ax, Family::inverse_sq}) {
    const PotentialEntry e = instantiate(f);
    for (const IntegralSpec& s : classical_monitors(e)) {
      for (const PhasePoint& st : random_states(e, 30, 12)) {
        double scale = 0.0;
        const double fd = fd_poisson_bracket_H(e, s, st, 1e-5, &scale);
        INFO(e.name(), " ", s.name);
        CHECK(std::abs(poisson_bracket_H(e, s, st) - fd) <= 1e-6 * (1 + scale));
      }
    }
  }
  // A generic non-integral: both brackets agree and are far from zero.
  const PotentialEntry osc = instantiate(Family::oscillator);
  const IntegralSpec s = monomial(0, 2, 1);
  const PhasePoint st{0.3, -0.8, 0.9, 0.4};
  double scale = 0.0;
  const double fd = fd_poisson_bracket_H(osc, s, st, 1e-5, &scale);
  CHECK(std::abs(fd) > 1e-2);
  CHECK(poisson_bracket_H(osc, s, st) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("a corrupted correction term leaves a finite bracket") {
  const double a = 1.0;
  const PotentialEntry e = instantiate(Family::inverse_sq, {{"a", a}});
  IntegralSpec bad = e.integral("X1");
  bad.g2.terms()[0].coefficient *= 1.5;  // 2a -> 3a
  for (const PhasePoint& st : random_states(e, 20, 4)) {
    if (std::abs(st.p2) < 0.2 || std::abs(st.p1) < 0.2 || std::abs(st.y) < 0.2) continue;
    CHECK(std::abs(poisson_bracket_H(e, bad, st)) >= 1e-2);
  }
}

TEST_CASE("leapfrog is exact for free motion and reversible") {
  const PotentialEntry fr = instantiate(Family::free);
  const PhasePoint s0{0.2, -0.4, 0.7, -1.3};
  const auto rec = integrate(fr, s0, 0.01, 500, classical_monitors(fr));
  const PhasePoint& s = rec.states.back();
  // Round-off only: a few ulps per step.
  CHECK(std::abs(s.x - (0.2 + 0.7 * 5.0)) <= 500 * 1e-15);
  CHECK(std::abs(s.y - (-0.4 - 1.3 * 5.0)) <= 500 * 1e-15);
  for (double d : rec.drift) CHECK(d <= 1e-12);

  const PotentialEntry cou = instantiate(Family::coulomb);
  const PhasePoint c0{1.0, 0.0, 0.1, 1.1};
  const auto fwd = integrate(cou, c0, 1e-3, 3000, {});
  PhasePoint back = fwd.states.back();
  back.p1 = -back.p1;
  back.p2 = -back.p2;
  const PhasePoint r = integrate(cou, back, 1e-3, 3000, {}).states.back();
  CHECK(std::abs(r.x - c0.x) <= 1e-10);
  CHECK(std::abs(r.y - c0.y) <= 1e-10);
  CHECK(std::abs(r.p1 + c0.p1) <= 1e-10);
  CHECK(std::abs(r.p2 + c0.p2) <= 1e-10);
}

TEST_CASE("oscillator conservation over T = 100") {
  const PotentialEntry osc = instantiate(Family::oscillator, {{"omega", 1.0}});
  const auto rec = integrate(osc, {1.0, 0.2, -0.3, 0.8}, 1e-3, 100000, classical_monitors(osc));
  REQUIRE(rec.names[0] == "L3");
  CHECK(rec.drift[0] <= 1e-6);  // H
  CHECK(rec.drift[1] <= 1e-9);  // L3
  for (std::size_t m = 0; m < rec.drift.size(); ++m) {
    INFO(m);
    CHECK(rec.drift[m] <= 1e-6);
    CHECK(rec.drift_second_half[m] <= 2.0 * rec.drift_first_half[m] + 1e-12);
  }
  CHECK(rec.times.size() == 100001);
}

TEST_CASE("leapfrog converges at second order") {
  const PotentialEntry cou = instantiate(Family::coulomb);
  const PhasePoint s0{1.0, 0.0, 0.1, 1.1};
  const double T = 2.0, dt = 0.01;
  auto end = [&](double h) { return integrate(cou, s0, h, std::lround(T / h), {}).states.back(); };
  const PhasePoint ref = end(dt / 64);
  auto err = [&](double h) {
    const PhasePoint s = end(h);
    return std::hypot(std::hypot(s.x - ref.x, s.y - ref.y), std::hypot(s.p1 - ref.p1, s.p2 - ref.p2));
  };
  const double ratio = err(dt) / err(dt / 2);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("singular approaches and blow-ups are reported") {
  const PotentialEntry cou = instantiate(Family::coulomb);
  CHECK_THROWS_AS(integrate(cou, {1.0, 0.0, -1.0, 0.0}, 1e-3, 10, {}), DomainError);
  CHECK(*pericenter_estimate(cou, {1.0, 0.0, 0.0, 1.0}) == doctest::Approx(1.0));  // circular orbit
  {
    // The estimate is a turning point: E r^2 - alpha r - L^2 / 2 = 0 with alpha = -1.
    const PhasePoint s{0.6, 0.8, 0.0, 0.8};
    const double E = 0.32 - 1.0, L = 0.48, r = *pericenter_estimate(cou, s);
    CHECK(r < 1.0);
    CHECK(std::abs(E * r * r + r - L * L / 2) <= 1e-14);
    // And the integrated orbit does get that close.
    const auto rec = integrate(cou, s, 1e-4, 40000, {});
    double rmin = 1.0;
    for (const auto& q : rec.states) rmin = std::min(rmin, std::hypot(q.x, q.y));
    CHECK(rmin == doctest::Approx(r).epsilon(1e-4));
  }
  const PotentialEntry isq = instantiate(Family::inverse_sq, {{"a", 1.0}});
  CHECK(*pericenter_estimate(isq, {1.0, 0.0, -1.0, 0.0}) == doctest::Approx(std::sqrt(1.0 / 1.5)));
  // Heading into a pole of 1/sn^2 with plenty of energy reaches the margin.
  const PotentialEntry v2 = instantiate(Family::elliptic_V2, {{"k", 0.5}});
  const auto rec = integrate(v2, {1.0, 0.0, -50.0, 0.0}, 1e-3, 10000, {});
  CHECK(rec.exited);
  CHECK(rec.steps() < 10000);
  const PotentialEntry lin = instantiate(Family::linear_ax, {{"a", 1e14}});
  CHECK_THROWS_AS(integrate(lin, {0.0, 0.0, 0.0, 0.0}, 1.0, 5, {}), InstabilityError);
  CHECK_THROWS_AS(integrate(instantiate(Family::soliton_V1a), {0, 0, 0, 0}, 1e-3, 1,
                            {instantiate(Family::soliton_V1a).integral("X1")}),
                  InvalidParameter);
}

TEST_CASE("trajectory CSV") {
  const PotentialEntry osc = instantiate(Family::oscillator);
  const auto rec = integrate(osc, {0.1, 0.2, 0.3, 0.4}, 0.1, 2, {osc.integral("L3")});
  std::ostringstream out;
  write_csv(rec, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,x,y,p1,p2,H,X_L3");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(out.str().find("0.10000000000000001") != std::string::npos);  // 17 significant digits
}
