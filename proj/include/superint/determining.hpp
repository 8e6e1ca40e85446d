#pragma once

#include <array>

#include "superint/catalog.hpp"
#include "superint/integral_spec.hpp"
#include "superint/jet.hpp"

namespace superint {

/// f1..f4 (coefficients of p1^3, p1^2 p2, p1 p2^2, p2^3 in the leading part)
/// and the partials used by the linear compatibility condition.
struct FPolyValues {
  double f1 = 0, f2 = 0, f3 = 0, f4 = 0;
  double f1y = 0, f1yy = 0;
  double f2x = 0, f2y = 0, f2xy = 0, f2yy = 0;
  double f3x = 0, f3y = 0, f3xx = 0, f3xy = 0;
  double f4x = 0, f4xx = 0;
};

FPolyValues f_polys(const Cubic& A, Point p);

/// f1..f4 as Taylor series about a point (x, y given as Taylor variables).
std::array<Taylor, 4> f_polys(const Cubic& A, const Taylor& x, const Taylor& y);

/// LHS - RHS of one equation, with the largest absolute constituent term.
struct EquationValue {
  double value = 0.0;
  double scale = 0.0;
};

using Residual4 = std::array<EquationValue, 4>;

/// The four classical determining equations of a third-order integral.
/// V, g1, g2 need order >= 1.
Residual4 residual_classical(const Cubic& A, const Jet& V, const Jet& g1, const Jet& g2, Point p);

/// Quantum counterpart; differs from the classical system only by the
/// hbar^2/4 block in the first equation. V needs order >= 3.
Residual4 residual_quantum(const Cubic& A, const Jet& V, const Jet& g1, const Jet& g2, double hbar, Point p);

/// f1 V_xxx + f2 V_xxy + f3 V_xyy + f4 V_yyy + 8 A300 (x V_y - y V_x)
/// + 2 (A210 V_x + A201 V_y): zero iff a classical integral is also quantum.
EquationValue residual_condnouv(const Cubic& A, const Jet& V, Point p);

/// Third-order linear condition on V obtained by eliminating g1, g2 from the
/// last three determining equations.
EquationValue residual_compatlin(const Cubic& A, const Jet& V, Point p);

/// Coefficients of y^0 and y^1 of the linear condition for V = V(x).
std::array<EquationValue, 2> residual_compatx(const Cubic& A, const Jet& V, double x);

/// hbar^2 V'^2 - (4V^3 + alpha V^2 + beta V + gamma).
EquationValue residual_elliptique(const Jet& V, const EllipticConstants& c, double hbar, double x);

/// Second-order integral sum B L^i p1^j p2^k + g0 (same in both mechanics):
///   g0_x = 2 q20 V_x + q11 V_y,  g0_y = q11 V_x + 2 q02 V_y.
std::array<EquationValue, 2> residual_second_order(const Quadratic& B, const Jet& V, const Jet& g0, Point p);

/// First-order integral C_L L + C_1 p1 + C_2 p2: C_L (x V_y - y V_x) + C_1 V_x + C_2 V_y.
EquationValue residual_first_order(const LinearCoeffs& C, const Jet& V, Point p);

}  // namespace superint
