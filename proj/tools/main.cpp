#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "commands.hpp"
#include "superint/errors.hpp"

using superint::cli::CampaignConfig;

namespace {

void add_physics(CLI::App* cmd, CampaignConfig& c) {
  cmd->add_option("--family", c.family, "potential family")->required();
  for (const char* p : {"a", "alpha", "omega", "k", "hbar"}) {
    cmd->add_option_function<double>(std::string("--") + p, [&c, p](double v) { c.params[p] = v; },
                                     std::string("family parameter ") + p);
  }
  cmd->add_option("--include", c.include, "optional integrals to add")->delimiter(',');
  cmd->add_option("--output", c.output, "JSON report path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of integrals of motion for 2D superintegrable potentials"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file ([verify] sections or verify.key names); command-line flags take precedence");
  CampaignConfig c;

  CLI::App* verify = app.add_subcommand("verify", "residuals of the determining equations over sampled points");
  add_physics(verify, c);
  verify->add_option("--mode", c.mode, "classical or quantum")->check(CLI::IsMember({"classical", "quantum"}));
  verify->add_option("--samples", c.samples, "number of sample points");
  verify->add_option("--seed", c.seed, "sampling seed");
  verify->add_option("--tolerance", c.tolerance, "pass threshold relative to 1 + scale");
  verify->add_flag("--classical-limit", c.classical_limit, "also compare hbar -> 0 with the classical equations");

  CLI::App* simulate = app.add_subcommand("simulate", "leapfrog trajectory with conservation monitors");
  add_physics(simulate, c);
  simulate->add_option("--x0", c.x0);
  simulate->add_option("--y0", c.y0);
  simulate->add_option("--p1", c.p1);
  simulate->add_option("--p2", c.p2);
  simulate->add_option("--dt", c.dt, "time step");
  simulate->add_option("--steps", c.steps, "number of steps");
  simulate->add_option("--tolerance", c.drift_tolerance, "allowed relative drift");
  simulate->add_option("--csv", c.csv, "trajectory CSV path");

  CLI::App* grid = app.add_subcommand("gridcheck", "grid convergence of quantum commutator residuals");
  grid->set_help_flag("--help", "Print this help message and exit");  // frees -h for the spacing
  add_physics(grid, c);
  grid->add_option("--h", c.h, "coarsest grid spacing");
  grid->add_option("--levels", c.levels, "number of nested grids (h, h/2, ...)");
  grid->add_option("--tests", c.tests, "number of Gaussian test functions");
  grid->add_option("--seed", c.seed, "test-function seed");
  grid->add_option("--box", c.box, "x_min,x_max,y_min,y_max")->delimiter(',')->expected(4);
  grid->add_option("--spec", c.specs, "restrict to these integrals")->delimiter(',');
  grid->add_flag("--control", c.control, "add a corrupted control per integral");
  grid->add_option("--csv", c.csv, "convergence table CSV path");

  CLI::App* self = app.add_subcommand("elliptic-selftest", "Jacobi elliptic function property suites");
  self->add_option("--fault-dn", c.dn_fault, "test hook: perturb dn by this amount");
  self->add_option("--output", c.output, "JSON report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : superint::cli::kUsageError;
  }

  try {
    if (*verify) return superint::cli::cmd_verify(c);
    if (*simulate) return superint::cli::cmd_simulate(c);
    if (*grid) return superint::cli::cmd_gridcheck(c);
    return superint::cli::cmd_elliptic_selftest(c);
  } catch (const superint::InvalidParameter& e) {
    std::cerr << "superint: " << e.what() << "\n";
    return superint::cli::kUsageError;
  } catch (const superint::DomainError& e) {
    std::cerr << "superint: domain error: " << e.what() << "\n";
    return superint::cli::kNumericalError;
  } catch (const superint::InstabilityError& e) {
    std::cerr << "superint: instability: " << e.what() << "\n";
    return superint::cli::kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "superint: numerical error: " << e.what() << "\n";
    return superint::cli::kNumericalError;
  }
}
