#pragma once

#include <array>
#include <optional>

#include "superint/field.hpp"
#include "superint/integral_spec.hpp"

namespace superint {

/// EXPERIMENTAL. The nonlinear conditions reference h4, h5, h6, which are
/// never defined alongside h1..h3; `h_map` says which h_n stands in for each
/// (default h4 <- h1, h5 <- h2, h6 <- h3).
struct NonlinearOptions {
  double degeneracy_tol = 1e-8;
  std::array<int, 3> h_map{1, 2, 3};
};

/// phi1 = V_y / V_x, phi2 = -hbar^2 (condnouv expression) / (4 V_x), and
/// h1..h3, each as a Taylor series (order 2) about the point.
struct NonlinearAux {
  Point point;
  Taylor phi1, phi2;
  std::array<Taylor, 3> h;
  double d1_value = 0.0;  // phi1_x + phi1 phi1_y
  double d2_value = 0.0;  // phi1_xy phi1 - phi1_x phi1_y
  bool d1 = false;
  bool d2 = false;
  bool classical = false;

  bool degenerate() const { return d1 || d2; }
};

/// Exact (automatic-differentiation) construction. hbar = 0 selects the
/// classical case, where phi2 is identically zero. Throws DomainError where
/// V_x = 0.
NonlinearAux nonlinear_aux(const TaylorExpr& V, const Cubic& A, double hbar, Point p,
                           const NonlinearOptions& opt = {});

/// Same quantities with phi1, phi2 derivatives from nested central
/// differences (step h) of pointwise values built on order-3 jets; h1..h3
/// are evaluated the same way. Used as an independent check.
NonlinearAux nonlinear_aux_fd(const TaylorExpr& V, const Cubic& A, double hbar, Point p, double h,
                              const NonlinearOptions& opt = {});

/// Residual of nonlinear condition 1, 2 or 3; nullopt (degenerate marker)
/// when either nondegeneracy assumption fails.
std::optional<double> residual_compatnl(const NonlinearAux& aux, int variant, const NonlinearOptions& opt = {});

}  // namespace superint
