#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "superint/catalog.hpp"
#include "superint/integral_spec.hpp"
#include "superint/jet.hpp"

namespace superint {

struct PhasePoint {
  double x = 0.0, y = 0.0, p1 = 0.0, p2 = 0.0;

  Point position() const { return {x, y}; }
};

/// Classical value of the integral (plain products, L = x p2 - y p1).
/// Throws DomainError when a correction field is not finite at the state.
double eval_observable(const IntegralSpec& spec, const PhasePoint& s);

/// sum_i (dX/dq_i p_i - dX/dp_i V_{q_i}) from the polynomial structure.
/// Order 3 uses g1jet/g2jet, order 2 uses g0jet, order 1 needs none.
double poisson_bracket_H(const IntegralSpec& spec, const Jet& V, const Jet& g1, const Jet& g2, const PhasePoint& s,
                         const Jet* g0 = nullptr);

/// Same, with the jets taken from the entry and the spec.
double poisson_bracket_H(const PotentialEntry& entry, const IntegralSpec& spec, const PhasePoint& s);

/// Central-difference phase-space bracket built only from values of X and V.
/// `scale` receives the sum of the magnitudes of the bracket's terms.
double fd_poisson_bracket_H(const PotentialEntry& entry, const IntegralSpec& spec, const PhasePoint& s,
                            double h = 1e-5, double* scale = nullptr);

struct TrajectoryRecord {
  std::vector<std::string> names;  // monitored integrals (H excluded)
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<double> H;
  std::vector<std::vector<double>> X;  // X[m][step]
  /// max_t |Q(t) - Q(0)| / (1 + |Q(0)|); index 0 is H, then the monitors.
  std::vector<double> drift;
  /// Same over the first and second half of the record (secular growth check).
  std::vector<double> drift_first_half, drift_second_half;
  bool exited = false;
  std::string exit_reason;

  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

struct IntegrateOptions {
  double margin = kDefaultMargin;  // minimum clearance from the singular set
  bool check_pericenter = true;
  double instability_bound = 1e12;
};

/// Lowest clearance the trajectory can reach, estimated from the conserved
/// energy and angular momentum (radial families) or the x-energy (a/x^2).
/// nullopt when no estimate applies.
std::optional<double> pericenter_estimate(const PotentialEntry& entry, const PhasePoint& s);

/// Position-Verlet integration of H = (p1^2 + p2^2)/2 + V. Records every step.
/// Leaving the admissible region truncates the record (exited = true);
/// |state| above the instability bound throws InstabilityError; a pericenter
/// below the margin or an inadmissible start throws DomainError.
TrajectoryRecord integrate(const PotentialEntry& entry, const PhasePoint& s0, double dt, long n_steps,
                           const std::vector<IntegralSpec>& monitors, const IntegrateOptions& opt = {});

/// Integrals of the entry with a classical meaning.
std::vector<IntegralSpec> classical_monitors(const PotentialEntry& entry);

/// Header `t,x,y,p1,p2,H[,X_<name>...]`, 17 significant digits.
void write_csv(const TrajectoryRecord& rec, std::ostream& out);

}  // namespace superint
