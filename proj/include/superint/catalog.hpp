#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superint/field.hpp"
#include "superint/integral_spec.hpp"
#include "superint/sampling.hpp"

namespace superint {

enum class Family {
  free,
  coulomb,
  oscillator,
  linear_ax,
  inverse_sq,
  quantum_inverse_sq,
  elliptic_V1,
  elliptic_V2,
  elliptic_V3,
  soliton_V1a,
  trig_V2a,
  hyperbolic_V2b,
  quantum_x2_V4,
};

/// Named parameters: a, alpha, omega, k, hbar. Ordered for reproducible output.
using Params = std::map<std::string, double>;

const std::vector<Family>& all_families();
std::string family_name(Family f);
/// Throws InvalidParameter for an unknown identifier.
Family parse_family(const std::string& name);

/// Parameter names accepted by a family, with defaults.
Params default_params(Family f);

/// Cells between consecutive singular abscissae of a 1D potential. Poles sit
/// at offset + n * period (or only at offset when period is infinite).
struct PoleLattice {
  bool has_poles = false;
  double offset = 0.0;
  double period = 0.0;  // 0 => single pole at `offset`

  long cell(double x) const;
  double distance(double x) const;
};

/// Antiderivative of a 1D potential V(x).
class Antiderivative {
 public:
  virtual ~Antiderivative() = default;
  /// Integral of V from the family reference point to x. Throws DomainError
  /// if the path crosses a pole.
  virtual double operator()(double x) const = 0;
  /// An antiderivative on the pole-free cell containing x0 (additive
  /// constant arbitrary per cell), expanded about x0.
  virtual Taylor local(const Taylor& x) const = 0;
  virtual double reference() const = 0;
  virtual bool closed_form() const = 0;
};

struct EllipticConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

struct PotentialEntry {
  Family family = Family::free;
  Params params;
  double hbar = 1.0;
  TaylorExpr potential;  // V(x, y), analytic
  FieldPtr field;        // same, as a ScalarField with domain predicate
  Domain domain;
  bool one_dimensional = false;  // V = V(x)
  PoleLattice poles;             // 1D families only
  std::shared_ptr<const Antiderivative> antiderivative;
  std::vector<IntegralSpec> integrals;
  std::vector<IntegralSpec> optional_integrals;  // enabled on request (e.g. X4..X7 for generic a)
  std::optional<EllipticConstants> elliptic_constants;
  std::optional<double> third_order_constant;
  std::string printed_potential;  // published form, when it differs
  std::string note;

  std::string name() const { return family_name(family); }
  /// Searches integrals, then optional_integrals. Throws InvalidParameter.
  const IntegralSpec& integral(const std::string& name) const;
  /// Moves the named optional integrals into `integrals`.
  void include(const std::vector<std::string>& names);
};

/// Builds the entry with every integral listed for the family. Unknown
/// parameter names or invalid values throw InvalidParameter.
PotentialEntry instantiate(Family family, const Params& params = {});

/// Constants of hbar^2 V'^2 = 4V^3 + alpha V^2 + beta V + gamma, solved from
/// three abscissae and verified at 50 more (1e-9 relative). Throws
/// ClassificationError when the potential is not a solution.
EllipticConstants derive_elliptic_constants(const PotentialEntry& entry, std::optional<double> x0 = std::nullopt);

/// c = hbar^2 V'''/(4V') - 3V, checked for constancy over 50 probes.
/// Throws InvalidParameter for 2D families, DomainError if V' vanishes
/// identically, ClassificationError if c is not constant.
double third_order_constant(const PotentialEntry& entry);

/// Integral of V from the family reference point (1D families only).
double antiderivative(const PotentialEntry& entry, double x);

/// Hamiltonian as an order-2 spec: B020 = B002 = 1/2, g0 = V.
IntegralSpec hamiltonian_spec(const PotentialEntry& entry);

/// The trivial third-order integrals H p2 and p2^3 (not part of catalogs).
IntegralSpec trivial_h_p2(const PotentialEntry& entry);
IntegralSpec trivial_p2_cubed();

/// Sampling margin for residual campaigns in catalog units.
double default_margin(const PotentialEntry& entry);

}  // namespace superint
