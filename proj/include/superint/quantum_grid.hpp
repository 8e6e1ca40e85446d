#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "superint/catalog.hpp"
#include "superint/field.hpp"
#include "superint/integral_spec.hpp"
#include "superint/sampling.hpp"

namespace superint {

using cplx = std::complex<double>;

/// Uniform grid on a rectangle; nodes at x_min + i h, y_min + j h. Norms run
/// over nodes at least `margin` cells away from the edge.
struct GridSpec {
  Box box;
  double h = 0.01;
  int margin = 6;

  int nx() const;
  int ny() const;
  double x(int i) const { return box.x_min + i * h; }
  double y(int j) const { return box.y_min + j * h; }
  bool interior(int i, int j) const { return i >= margin && j >= margin && i < nx() - margin && j < ny() - margin; }
};

/// Validates h > 0, a nonempty interior and extents that are whole multiples of h.
GridSpec make_grid(const Box& box, double h, int margin = 6);

/// Complex samples in row-major order (x fastest).
struct GridFunction {
  GridSpec grid;
  std::vector<cplx> v;

  explicit GridFunction(const GridSpec& g) : grid(g), v(static_cast<std::size_t>(g.nx()) * g.ny()) {}
  cplx& operator()(int i, int j) { return v[static_cast<std::size_t>(j) * grid.nx() + i]; }
  const cplx& operator()(int i, int j) const { return v[static_cast<std::size_t>(j) * grid.nx() + i]; }
};

/// sqrt(h^2 sum |u|^2) over the interior.
double interior_norm(const GridFunction& u);
/// h^2 sum conj(a) b over the interior.
cplx interior_inner(const GridFunction& a, const GridFunction& b);

/// Real field on the grid nodes. Throws DomainError when a node is closer
/// than `clearance` to the singular set or the value is not finite.
using GridReal = std::vector<double>;
GridReal sample_field(const ScalarField& f, const GridSpec& g, const Domain* domain = nullptr,
                      double clearance = kDefaultMargin);

/// d^a/dx^a d^b/dy^b by second-order central differences; zero where the
/// stencil does not fit.
GridFunction grid_derivative(const GridFunction& u, int a, int b);

/// {f, p1^a p2^b} psi = f D psi + D (f psi), D = (-i hbar)^(a+b) d_x^a d_y^b.
/// Throws InvalidParameter for powers outside a + b <= 3 or a margin smaller
/// than the stencil reach.
GridFunction apply_sym_term(const GridReal& f, int a, int b, double hbar, const GridFunction& psi);
GridFunction apply_sym_term(const ScalarField& f, int a, int b, double hbar, const GridFunction& psi);

/// Sum of symmetrized terms.
struct GridOperator {
  struct Term {
    GridReal f;
    int a = 0, b = 0;
  };
  GridSpec grid;
  double hbar = 1.0;
  std::vector<Term> terms;

  GridFunction apply(const GridFunction& psi) const;
};

/// -(hbar^2 / 2) (5-point Laplacian) + V.
GridOperator hamiltonian_operator(const PotentialEntry& entry, double hbar, const GridSpec& g);
GridFunction apply_H(const PotentialEntry& entry, double hbar, const GridFunction& psi);

/// Symmetrized operator of the integral: every {L^i, p1^j p2^k} is rewritten
/// as sum {F_ab, p1^a p2^b} with the classical coefficient polynomials plus
/// the exact hbar^2 ordering terms, then the correction fields are added.
GridOperator integral_operator(const PotentialEntry& entry, const IntegralSpec& spec, double hbar,
                               const GridSpec& g);

/// Smooth test function exp(-((x-cx)^2/sx^2 + (y-cy)^2/sy^2)/2 + i(kx x + ky y)).
struct Gaussian {
  double cx = 0, cy = 0, sx = 1, sy = 1, kx = 0, ky = 0;
  GridFunction sample(const GridSpec& g) const;
};

/// `count` seeded Gaussians for a box: widths in [5 h_coarse, extent/8],
/// centres at least 4 stencil radii (of the coarsest grid) from the edge.
std::vector<Gaussian> seeded_gaussians(const Box& box, double h_coarse, int count, std::uint64_t seed);

struct CommutatorResult {
  std::vector<double> residual;  // ||H X psi - X H psi|| / ||psi|| per test function
  std::vector<double> floor;     // measured rounding noise per test function (when requested)
  double aggregate = 0.0;        // max over test functions
  double aggregate_floor = 0.0;  // in a convergence study: noise of the worst test function
};

/// With `estimate_floor`, the rounding noise is measured by recomputing the
/// commutator on psi / 3 and rescaling (doubles the cost).
CommutatorResult commutator_residual(const PotentialEntry& entry, const IntegralSpec& spec, double hbar,
                                     const GridSpec& g, const std::vector<Gaussian>& tests,
                                     bool estimate_floor = false);

struct ConvergenceStudy {
  std::vector<double> h;
  std::vector<CommutatorResult> levels;
  std::vector<double> order;                   // aggregate order between consecutive levels
  std::vector<std::vector<double>> psi_order;  // [level pair][test function]
  bool floor_limited = false;                  // finest residual below 100x its rounding noise
  std::optional<double> richardson_gap;        // |order(h,h/2) - order(h/2,h/4)| with three levels

  /// Order of the finest level pair.
  double final_order() const { return order.empty() ? 0.0 : order.back(); }
  double final_residual() const { return levels.empty() ? 0.0 : levels.back().aggregate; }
};

/// Residuals on nested grids h, h/2, ... over the same box (snapped to the
/// coarsest spacing; finer spacings must divide it).
ConvergenceStudy convergence_order(const PotentialEntry& entry, const IntegralSpec& spec, double hbar,
                                   const Box& box, const std::vector<double>& hs,
                                   const std::vector<Gaussian>& tests, int margin = 6);

/// Box for grid checks: the entry's domain restricted to a region that keeps
/// the catalog margin from the singular set.
Box default_grid_box(const PotentialEntry& entry);

/// Shrinks the box so both extents are whole multiples of h.
Box snap_box(const Box& box, double h);

/// Corrupted control: correction fields scaled by 4/3; specs without
/// correction fields instead gain the multiplication operator (x^2 + y^2)/3.
IntegralSpec corrupted_control(const IntegralSpec& spec);

/// Header `spec,test_function,h,residual,order_estimate`, one row per test
/// function and level plus an `aggregate` row per level.
void write_convergence_csv(const std::string& spec_name, const ConvergenceStudy& s, std::ostream& out,
                           bool header = true);

}  // namespace superint
