#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "superint/catalog.hpp"
#include "superint/sampling.hpp"

namespace superint {

enum class Mode { classical, quantum };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

/// One equation evaluated at one point.
struct PointResidual {
  std::string equation;
  double value = 0.0;
  double scale = 0.0;
};

/// Every determining equation / compatibility condition that applies to
/// `spec` on `entry`, evaluated at p with analytic jets. Equation ids are
/// "<integral>/<equation>".
std::vector<PointResidual> integral_residuals(const PotentialEntry& entry, const IntegralSpec& spec, Mode mode,
                                              double hbar, Point p);

/// Statistics of one equation over a sample set. `pass` requires
/// |r| <= tolerance * (1 + s) at every point, s being the local scale;
/// max_rel = max |r| / (1 + s).
struct ResidualReport {
  std::string equation;
  double max_abs = 0.0;
  double rms = 0.0;
  double scale = 0.0;
  double max_rel = 0.0;
  Point worst{};
  int n_samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool pass = true;
};

/// Accumulates PointResiduals into reports, keyed by equation id in
/// first-seen order.
class ReportBuilder {
 public:
  ReportBuilder(std::uint64_t seed, double tolerance) : seed_(seed), tolerance_(tolerance) {}
  void add(const PointResidual& r, Point p);
  std::vector<ResidualReport> finish() const;

 private:
  struct Acc {
    ResidualReport report;
    double sum_sq = 0.0;
  };
  std::uint64_t seed_;
  double tolerance_;
  std::vector<Acc> acc_;
};

/// Integrals of the entry that make sense in the given mode.
std::vector<const IntegralSpec*> integrals_for_mode(const PotentialEntry& entry, Mode mode);

/// All integrals of the entry (for the mode) plus the entry-level cubic ODE
/// check when elliptic constants are present.
std::vector<ResidualReport> verify_entry(const PotentialEntry& entry, Mode mode, double hbar,
                                         const SampleSet& samples, double tolerance);

/// Single-spec campaign.
std::vector<ResidualReport> verify_integral(const PotentialEntry& entry, const IntegralSpec& spec, Mode mode,
                                            double hbar, const SampleSet& samples, double tolerance);

/// Samples for residual campaigns on the entry's default domain.
SampleSet entry_samples(const PotentialEntry& entry, int count, std::uint64_t seed);

/// residual_quantum at a small hbar minus residual_classical, per order-3
/// integral and equation; passes when within tolerance * (1 + scale).
std::vector<ResidualReport> classical_limit_reports(const PotentialEntry& entry, const SampleSet& samples,
                                                    double hbar_small = 1e-6, double tolerance = 1e-10);

bool all_pass(const std::vector<ResidualReport>& reports);

}  // namespace superint
