#pragma once

#include <array>
#include <string>
#include <vector>

#include "superint/field.hpp"

namespace superint {

enum class Mechanics { classical, quantum, both };

const char* to_string(Mechanics m);

/// Exponents (i, j, k) of one leading monomial L^i p1^j p2^k.
struct Monomial {
  int i, j, k;
};

/// Monomials of total degree 3, 2 and 1, in storage order.
inline constexpr std::array<Monomial, 10> kCubic{{{3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
                                                 {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}}};
inline constexpr std::array<Monomial, 6> kQuadratic{{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};
inline constexpr std::array<Monomial, 3> kLinear{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

using Cubic = std::array<double, 10>;
using Quadratic = std::array<double, 6>;
using LinearCoeffs = std::array<double, 3>;

/// Position of A_ijk (i + j + k = 3) in a Cubic array; likewise for lower
/// degrees. Throws std::out_of_range for other exponents.
int cubic_index(int i, int j, int k);
int quadratic_index(int i, int j, int k);
int linear_index(int i, int j, int k);

/// Candidate integral of motion of order 1, 2 or 3.
///
/// Classical value:
///   order 3:  sum A_ijk L^i p1^j p2^k + g1 p1 + g2 p2
///   order 2:  sum B_ijk L^i p1^j p2^k + g0
///   order 1:  C_L L + C_1 p1 + C_2 p2
/// The quantum operator replaces every product by its anticommutator
/// ({L^i, p1^j p2^k}, {g1, p1}, {g2, p2}, {g0, 1}), i.e. twice the classical
/// symbol plus hbar^2 ordering terms.
struct IntegralSpec {
  std::string name;
  int order = 3;
  Mechanics mechanics = Mechanics::both;
  Cubic A{};
  Quadratic B{};
  LinearCoeffs C{};
  LinearField g1, g2;  // order 3
  LinearField g0;      // order 2
  std::string printed;  // form as published, when it differs from the stored one
  std::string note;

  double& a(int i, int j, int k) { return A[cubic_index(i, j, k)]; }
  double a(int i, int j, int k) const { return A[cubic_index(i, j, k)]; }
  double& b(int i, int j, int k) { return B[quadratic_index(i, j, k)]; }
  double b(int i, int j, int k) const { return B[quadratic_index(i, j, k)]; }

  bool quantum_capable() const { return mechanics != Mechanics::classical; }
  bool classical_capable() const { return mechanics != Mechanics::quantum; }
};

/// Handle to one stored real of a spec (a leading coefficient or the
/// coefficient of one correction-field term), used for perturbation studies.
struct CoefficientRef {
  std::string label;
  double* value;
};

/// Every nonzero stored coefficient of `spec`.
std::vector<CoefficientRef> stored_coefficients(IntegralSpec& spec);

/// spec1 + factor * spec2 (same order required).
IntegralSpec combine(const IntegralSpec& s1, const IntegralSpec& s2, double factor = 1.0);

}  // namespace superint
