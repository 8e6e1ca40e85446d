#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace superint::cli {

/// Stable exit-code contract.
enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2, kNumericalError = 3 };

struct CampaignConfig {
  std::string family;
  std::map<std::string, double> params;  // only the physical parameters given on the command line
  std::string mode = "quantum";
  int samples = 1000;
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  std::vector<std::string> include;
  bool classical_limit = false;

  // simulate
  double x0 = 1.0, y0 = 0.2, p1 = -0.3, p2 = 0.8;
  double dt = 1e-3;
  double drift_tolerance = 1e-6;
  long steps = 100000;
  std::string csv;

  // gridcheck
  double h = 0.04;
  int levels = 3;
  int tests = 8;
  std::vector<double> box;  // x_min, x_max, y_min, y_max
  std::vector<std::string> specs;
  bool control = false;

  // elliptic-selftest
  double dn_fault = 0.0;

  std::string output;  // JSON destination; stdout when empty
};

int cmd_verify(const CampaignConfig& c);
int cmd_simulate(const CampaignConfig& c);
int cmd_gridcheck(const CampaignConfig& c);
int cmd_elliptic_selftest(const CampaignConfig& c);

}  // namespace superint::cli
