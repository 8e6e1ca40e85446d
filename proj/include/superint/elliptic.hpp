#pragma once

#include <string>
#include <vector>

#include "superint/taylor.hpp"

namespace superint {

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// Arithmetic-geometric mean; stops when |a - b| <= eps * a.
/// Throws DomainError unless a, b > 0.
double agm(double a, double b);

/// Complementary modulus sqrt(1 - k^2), computed without cancellation.
double complementary_modulus(double k);

/// Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')).
/// Throws InvalidParameter outside [0, 1] and DomainError at k = 1.
double ellip_k(double k);

/// sn, cn, dn by the descending Landen (AGM) recursion. k = 0 and k = 1 use
/// the trigonometric and hyperbolic closed forms.
JacobiTriple jacobi(double u, double k);

struct JacobiSeries {
  Taylor sn, cn, dn;
};

/// Jacobi functions of a Taylor argument, from the ODE
/// sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn.
JacobiSeries jacobi(const Taylor& u, double k);

/// Distance from u to the nearest point of the lattice offset + n * period.
double lattice_distance(double u, double offset, double period);

/// Poles of 1/sn^2(u, k) sit at u = 2nK(k).
double sn_pole_distance(double u, double k);

/// One line of the elliptic self-test.
struct SelftestCheck {
  std::string name;
  double k = 0.0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  bool pass = true;
};

/// Identity, periodicity, derivative and degenerate-limit suites over the
/// modulus grid {0, 0.1, ..., 0.9, 0.99} plus 10^4 random (u, k). A nonzero
/// `dn_fault` is added to every dn the suite sees (detectability hook).
SelftestReport elliptic_selftest(double dn_fault = 0.0);

}  // namespace superint
