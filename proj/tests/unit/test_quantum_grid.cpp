#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "superint/errors.hpp"
#include "superint/quantum_grid.hpp"

using namespace superint;

namespace {

const cplx I(0.0, 1.0);

GridFunction minus_i_hbar_d(const GridFunction& u, int a, int b, double hbar) {
  GridFunction d = grid_derivative(u, a, b);
  for (auto& v : d.v) v *= -I * hbar;
  return d;
}

// L psi = x p2 psi - y p1 psi with plain central differences.
GridFunction apply_L(const GridFunction& u, double hbar) {
  const GridSpec& g = u.grid;
  const GridFunction px = minus_i_hbar_d(u, 1, 0, hbar), py = minus_i_hbar_d(u, 0, 1, hbar);
  GridFunction out(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = g.x(i) * py(i, j) - g.y(j) * px(i, j);
  return out;
}

GridFunction sub(const GridFunction& a, const GridFunction& b) {
  GridFunction out = a;
  for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] -= b.v[k];
  return out;
}

double max_interior(const GridFunction& u) {
  double m = 0.0;
  for (int j = 0; j < u.grid.ny(); ++j)
    for (int i = 0; i < u.grid.nx(); ++i)
      if (u.grid.interior(i, j)) m = std::max(m, std::abs(u(i, j)));
  return m;
}

const Gaussian kBlob{0.2, -0.1, 0.35, 0.3, 0.7, -0.4};

}  // namespace

TEST_CASE("grid construction") {
  CHECK_THROWS_AS(make_grid({0, 1, 0, 1}, 0.0), InvalidParameter);
  CHECK_THROWS_AS(make_grid({0, 1, 0, 1}, 0.3), InvalidParameter);
  CHECK_THROWS_AS(make_grid({0, 0.1, 0, 0.1}, 0.01, 6), InvalidParameter);
  const GridSpec g = make_grid({-1, 1, 0, 0.5}, 0.05, 3);
  CHECK(g.nx() == 41);
  CHECK(g.ny() == 11);
  CHECK(g.x(40) == doctest::Approx(1.0));
  const Box b = snap_box({0.3, 2.71, -1, 1}, 0.04);
  CHECK(b.x_max == doctest::Approx(0.3 + 60 * 0.04));
}

TEST_CASE("symmetrized terms with simple coefficients") {
  const double hbar = 0.7;
  const GridSpec g = make_grid({-1, 1, -1, 1}, 0.05);
  const GridFunction psi = kBlob.sample(g);
  const GridFunction t = apply_sym_term(*constant_field(1.0), 1, 0, hbar, psi);
  GridFunction ref = minus_i_hbar_d(psi, 1, 0, hbar);
  for (auto& v : ref.v) v *= 2.0;
  CHECK(max_interior(sub(t, ref)) <= 1e-12);

  GridFunction one(g);
  for (auto& v : one.v) v = 1.0;
  const GridFunction u = apply_sym_term(*make_field([](const Taylor& x, const Taylor&) { return x; }), 1, 0, hbar, one);
  for (int j = g.margin; j < g.ny() - g.margin; j += 7)
    for (int i = g.margin; i < g.nx() - g.margin; i += 7) {
      CHECK(std::abs(u(i, j) - cplx(0.0, -hbar)) <= 1e-12);
    }
  CHECK_THROWS_AS(apply_sym_term(*constant_field(1.0), 2, 2, hbar, psi), InvalidParameter);
  CHECK_THROWS_AS(apply_sym_term(*constant_field(1.0), -1, 0, hbar, psi), InvalidParameter);
  const GridSpec thin{{-1, 1, -1, 1}, 0.05, 1};
  CHECK_THROWS_AS(apply_sym_term(*constant_field(1.0), 2, 1, hbar, kBlob.sample(thin)), InvalidParameter);
}

TEST_CASE("monomial rewriting matches direct operator composition") {
  // Each {L^i, p1^j p2^k} assembled from coefficient polynomials and ordering
  // terms against composition of L and p applications; the gap is O(h^2).
  const double hbar = 0.8;
  const PotentialEntry free = instantiate(Family::free);
  auto direct = [&](const GridFunction& psi, int i, int j, int k) {
    auto P = [&](GridFunction u) {
      for (int n = 0; n < j; ++n) u = minus_i_hbar_d(u, 1, 0, hbar);
      for (int n = 0; n < k; ++n) u = minus_i_hbar_d(u, 0, 1, hbar);
      return u;
    };
    auto Ls = [&](GridFunction u) {
      for (int n = 0; n < i; ++n) u = apply_L(u, hbar);
      return u;
    };
    GridFunction a = Ls(P(psi)), b = P(Ls(psi));
    for (std::size_t n = 0; n < a.v.size(); ++n) a.v[n] += b.v[n];
    return a;
  };
  auto gap = [&](int i, int j, int k, double h) {
    const GridSpec g = make_grid({-1.2, 1.2, -1.2, 1.2}, h, 8);
    const GridFunction psi = kBlob.sample(g);
    IntegralSpec s;
    s.order = i + j + k;
    if (s.order == 3) s.a(i, j, k) = 1.0;
    else s.b(i, j, k) = 1.0;
    const GridFunction assembled = integral_operator(free, s, hbar, g).apply(psi);
    return interior_norm(sub(assembled, direct(psi, i, j, k))) / interior_norm(psi);
  };
  for (auto [i, j, k] : {std::array{2, 0, 1}, std::array{2, 1, 0}, std::array{3, 0, 0}, std::array{1, 1, 1},
                         std::array{2, 0, 0}, std::array{1, 1, 0}}) {
    const double e1 = gap(i, j, k, 0.04), e2 = gap(i, j, k, 0.02);
    INFO(i, j, k, " ", e1, " ", e2);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
  }
  // Dropping the ordering term of {L^2, p2} leaves an O(1) gap.
  const GridSpec g = make_grid({-1.2, 1.2, -1.2, 1.2}, 0.02, 8);
  const GridFunction psi = kBlob.sample(g);
  IntegralSpec s;
  s.a(2, 0, 1) = 1.0;
  s.g2.add(1.5 * hbar * hbar, constant_field(1.0), "undo");
  CHECK(interior_norm(sub(integral_operator(free, s, hbar, g).apply(psi), direct(psi, 2, 0, 1))) / interior_norm(psi) >
        0.5);
}

TEST_CASE("discrete Hamiltonian") {
  const double hbar = 0.9, h = 0.05;
  const PotentialEntry free = instantiate(Family::free);
  const GridSpec g = make_grid({-1, 1, -1, 1}, h);
  const double kx = 2.0, ky = -1.0;
  GridFunction wave(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) wave(i, j) = std::exp(I * (kx * g.x(i) + ky * g.y(j)));
  const GridFunction Hw = apply_H(free, hbar, wave);
  const double symbol = hbar * hbar / 2 * 4 / (h * h) * (std::pow(std::sin(kx * h / 2), 2) + std::pow(std::sin(ky * h / 2), 2));
  const double cont = hbar * hbar / 2 * (kx * kx + ky * ky);
  for (int j = g.margin; j < g.ny() - g.margin; j += 5)
    for (int i = g.margin; i < g.nx() - g.margin; i += 5) {
      CHECK(std::abs(Hw(i, j) - symbol * wave(i, j)) <= 1e-10);
      CHECK(std::abs(Hw(i, j) / wave(i, j) - cont) <= (kx * kx * kx * kx + ky * ky * ky * ky) * h * h * hbar * hbar / 24 * 1.01);
    }

  // A constant shift of V adds exactly c psi.
  const PotentialEntry osc = instantiate(Family::oscillator);
  PotentialEntry shifted = osc;
  shifted.field = make_field([p = osc.potential](const Taylor& x, const Taylor& y) { return p(x, y) + 0.75; });
  const GridFunction psi = kBlob.sample(g);
  const GridFunction d = sub(apply_H(shifted, hbar, psi), apply_H(osc, hbar, psi));
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.interior(i, j)) CHECK(std::abs(d(i, j) - 0.75 * psi(i, j)) <= 1e-13);
}

TEST_CASE("oscillator Gaussian energy against a tridiagonal eigensolve") {
  // Rayleigh quotient of the 2D ground-state Gaussian vs twice the lowest
  // eigenvalue of the 1D three-point Hamiltonian on the same spacing.
  const double hbar = 1.0, h = 0.05;
  const PotentialEntry osc = instantiate(Family::oscillator, {{"omega", 1.0}, {"hbar", hbar}});
  const double c = osc.field->value({1.0, 0.0});  // V = c (x^2 + y^2)
  const double w = std::sqrt(2 * c);
  const GridSpec g = make_grid({-6, 6, -6, 6}, h, 4);
  const Gaussian ground{0, 0, std::sqrt(hbar / w), std::sqrt(hbar / w), 0, 0};
  const GridFunction psi = ground.sample(g);
  const double rq = std::real(interior_inner(psi, apply_H(osc, hbar, psi))) / std::real(interior_inner(psi, psi));

  const int n = g.nx() - 2;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = g.x(i + 1);
    T(i, i) = hbar * hbar / (h * h) + c * x * x;
    if (i + 1 < n) T(i, i + 1) = T(i + 1, i) = -0.5 * hbar * hbar / (h * h);
  }
  const double e1 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T, Eigen::EigenvaluesOnly).eigenvalues()(0);
  CHECK(rq == doctest::Approx(2 * e1).epsilon(1e-3));
  CHECK(2 * e1 == doctest::Approx(hbar * w).epsilon(1e-3));
}

TEST_CASE("exact discrete commutation") {
  const double hbar = 1.0;
  const PotentialEntry sol = instantiate(Family::soliton_V1a);
  const GridSpec g = make_grid({-1.5, 1.5, -1, 1}, 0.05);
  const std::vector<Gaussian> tests = seeded_gaussians(g.box, 0.05, 4, 1);
  IntegralSpec H;
  H.order = 2;
  H.b(0, 2, 0) = 0.5;
  H.b(0, 0, 2) = 0.5;
  H.g0.add(1.0, sol.field, "V");
  CHECK(commutator_residual(sol, H, hbar, g, tests).aggregate <= 1e-12);
  CHECK(commutator_residual(sol, sol.integral("p2"), hbar, g, tests).aggregate <= 1e-12);
}

TEST_CASE("X7 converges at second order; its corrupted control stalls") {
  const double hbar = 1.0;
  const PotentialEntry e = instantiate(Family::quantum_inverse_sq, {{"hbar", hbar}});
  const Box box{0.5, 3.0, -1.0, 1.0};
  const std::vector<double> hs{0.04, 0.02, 0.01};
  const auto tests = seeded_gaussians(box, hs[0], 8, 42);
  const ConvergenceStudy s = convergence_order(e, e.integral("X7"), hbar, box, hs, tests);
  CHECK_FALSE(s.floor_limited);
  CHECK(s.final_order() == doctest::Approx(2.0).epsilon(0.15));
  REQUIRE(s.richardson_gap.has_value());
  CHECK(*s.richardson_gap <= 0.3);
  const IntegralSpec bad = corrupted_control(e.integral("X7"));
  CHECK(bad.g1.terms()[0].coefficient == doctest::Approx(4.0 * hbar * hbar));  // 3 -> 4
  const ConvergenceStudy c = convergence_order(e, bad, hbar, box, hs, tests);
  CHECK(c.final_order() <= 0.5);
  CHECK(c.final_residual() >= 100 * s.final_residual());
}

TEST_CASE("free p1^3 is floor-limited") {
  const PotentialEntry free = instantiate(Family::free);
  IntegralSpec s;
  s.a(0, 3, 0) = 1.0;
  const Box box{-1.5, 1.5, -1, 1};
  const ConvergenceStudy st = convergence_order(free, s, 1.0, box, {0.04, 0.02}, seeded_gaussians(box, 0.04, 4, 3));
  CHECK(st.floor_limited);
}

TEST_CASE("symmetrized operators are Hermitian on interior-supported functions") {
  const double hbar = 1.0;
  const PotentialEntry e = instantiate(Family::quantum_inverse_sq, {{"hbar", hbar}});
  const GridSpec g = make_grid({0.5, 3.0, -1.5, 1.5}, 0.02);
  const Gaussian a{1.6, 0.2, 0.15, 0.2, 1.0, -0.5}, b{1.8, -0.1, 0.2, 0.15, -0.3, 0.8};
  const GridFunction pa = a.sample(g), pb = b.sample(g);
  for (const auto& spec : e.integrals) {
    const GridOperator X = integral_operator(e, spec, hbar, g);
    const cplx l = interior_inner(pa, X.apply(pb)), r = interior_inner(X.apply(pa), pb);
    INFO(spec.name);
    CHECK(std::abs(l - r) <= 1e-9 * (1 + std::abs(l)));
  }
}

TEST_CASE("grids must avoid the singular set") {
  const PotentialEntry e = instantiate(Family::inverse_sq);
  const GridSpec g = make_grid({-1, 1, -1, 1}, 0.05);
  CHECK_THROWS_AS(commutator_residual(e, e.integral("X1"), 1.0, g, seeded_gaussians(g.box, 0.05, 2, 1)), DomainError);
  // Nodes closer than the catalog margin to x = 0.
  CHECK_THROWS_AS(commutator_residual(e, e.integral("X1"), 1.0, make_grid({0.02, 1.02, -1, 1}, 0.05), {kBlob}),
                  DomainError);
}

TEST_CASE("convergence CSV") {
  const PotentialEntry e = instantiate(Family::soliton_V1a);
  const Box box{-1.5, 1.5, -1, 1};
  const ConvergenceStudy s = convergence_order(e, e.integral("X2"), 1.0, box, {0.05, 0.025}, seeded_gaussians(box, 0.05, 2, 5));
  std::ostringstream out;
  write_convergence_csv("X2", s, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "spec,test_function,h,residual,order_estimate");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2 * 3);
}
