#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "superint/catalog.hpp"
#include "superint/classical.hpp"
#include "superint/elliptic.hpp"
#include "superint/errors.hpp"
#include "superint/quantum_grid.hpp"
#include "superint/verification.hpp"

namespace superint::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1.0";

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json params_json(const std::map<std::string, double>& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write " + path);
  out << text;
}

PotentialEntry entry_for(const CampaignConfig& c) {
  PotentialEntry e = instantiate(parse_family(c.family), c.params);
  e.include(c.include);
  return e;
}

json report_json(const ResidualReport& r) {
  return {{"equation", r.equation},
          {"max_abs", r.max_abs},
          {"rms", r.rms},
          {"scale", r.scale},
          {"max_rel", r.max_rel},
          {"worst", {r.worst.x, r.worst.y}},
          {"pass", r.pass}};
}

}  // namespace

int cmd_verify(const CampaignConfig& c) {
  const Mode mode = parse_mode(c.mode);
  if (c.samples <= 0) throw InvalidParameter("samples must be positive");
  if (!(c.tolerance > 0.0)) throw InvalidParameter("tolerance must be positive");
  const PotentialEntry e = entry_for(c);
  const SampleSet s = entry_samples(e, c.samples, c.seed);
  std::vector<ResidualReport> reports = verify_entry(e, mode, e.hbar, s, c.tolerance);
  if (c.classical_limit) {
    if (mode != Mode::quantum) throw InvalidParameter("--classical-limit needs a quantum campaign");
    for (auto& r : classical_limit_reports(e, s)) reports.push_back(std::move(r));
  }
  const bool pass = all_pass(reports);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "verify";
  j["family"] = e.name();
  j["params"] = params_json(e.params);
  j["mode"] = to_string(mode);
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["tolerance"] = c.tolerance;
  j["results"] = json::array();
  for (const auto& r : reports) j["results"].push_back(report_json(r));
  j["pass"] = pass;
  j["timestamp"] = timestamp();
  emit(j, c.output);
  return pass ? kSuccess : kVerificationFailure;
}

int cmd_simulate(const CampaignConfig& c) {
  if (!(c.drift_tolerance > 0.0)) throw InvalidParameter("tolerance must be positive");
  const PotentialEntry e = entry_for(c);
  const std::vector<IntegralSpec> monitors = classical_monitors(e);
  const PhasePoint s0{c.x0, c.y0, c.p1, c.p2};
  const TrajectoryRecord rec = integrate(e, s0, c.dt, c.steps, monitors);
  if (!c.csv.empty()) {
    std::ofstream out(c.csv);
    if (!out) throw InvalidParameter("cannot write " + c.csv);
    write_csv(rec, out);
  }
  bool pass = !rec.exited;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "simulate";
  j["family"] = e.name();
  j["params"] = params_json(e.params);
  j["state0"] = {{"x", s0.x}, {"y", s0.y}, {"p1", s0.p1}, {"p2", s0.p2}};
  j["dt"] = c.dt;
  j["steps"] = rec.steps();
  j["tolerance"] = c.drift_tolerance;
  j["results"] = json::array();
  for (std::size_t q = 0; q < rec.drift.size(); ++q) {
    const bool ok = rec.drift[q] <= c.drift_tolerance;
    pass = pass && ok;
    j["results"].push_back({{"quantity", q == 0 ? std::string("H") : rec.names[q - 1]},
                            {"drift", rec.drift[q]},
                            {"drift_first_half", rec.drift_first_half[q]},
                            {"drift_second_half", rec.drift_second_half[q]},
                            {"pass", ok}});
  }
  j["exited"] = rec.exited;
  j["exit_reason"] = rec.exit_reason;
  j["pass"] = pass;
  j["timestamp"] = timestamp();
  emit(j, c.output);
  if (rec.exited) {
    std::cerr << "superint: trajectory " << rec.exit_reason << "\n";
    return kNumericalError;
  }
  return pass ? kSuccess : kVerificationFailure;
}

int cmd_gridcheck(const CampaignConfig& c) {
  if (c.levels < 2) throw InvalidParameter("need at least two grid levels");
  if (c.tests <= 0) throw InvalidParameter("need at least one test function");
  const PotentialEntry e = entry_for(c);
  Box box = default_grid_box(e);
  if (!c.box.empty()) {
    if (c.box.size() != 4) throw InvalidParameter("--box takes x_min,x_max,y_min,y_max");
    box = {c.box[0], c.box[1], c.box[2], c.box[3]};
  }
  box = snap_box(box, c.h);
  std::vector<double> hs;
  for (int l = 0; l < c.levels; ++l) hs.push_back(c.h / std::pow(2.0, l));
  const std::vector<Gaussian> tests = seeded_gaussians(box, c.h, c.tests, c.seed);

  std::vector<IntegralSpec> specs;
  for (const IntegralSpec* s : integrals_for_mode(e, Mode::quantum)) {
    if (!c.specs.empty() && std::find(c.specs.begin(), c.specs.end(), s->name) == c.specs.end()) continue;
    specs.push_back(*s);
  }
  for (const auto& n : c.specs)
    if (std::none_of(specs.begin(), specs.end(), [&](const IntegralSpec& s) { return s.name == n; }))
      throw InvalidParameter("family " + e.name() + " has no quantum integral '" + n + "'");

  std::ofstream csv;
  if (!c.csv.empty()) {
    csv.open(c.csv);
    if (!csv) throw InvalidParameter("cannot write " + c.csv);
  }
  bool header = true;
  bool pass = true;
  json results = json::array();
  auto run = [&](const IntegralSpec& spec, bool is_control, const ConvergenceStudy* truth) {
    const ConvergenceStudy st = convergence_order(e, spec, e.hbar, box, hs, tests);
    if (csv.is_open()) {
      write_convergence_csv(spec.name, st, csv, header);
      header = false;
    }
    const double order = st.final_order();
    const bool converged = st.floor_limited || (order >= 1.7 && order <= 2.3);
    pass = pass && converged;
    json r;
    r["spec"] = spec.name;
    r["control"] = is_control;
    r["residual"] = json::array();
    for (const auto& lv : st.levels) r["residual"].push_back(lv.aggregate);
    r["order"] = st.order;
    r["floor"] = st.levels.back().aggregate_floor;
    r["floor_limited"] = st.floor_limited;
    if (st.richardson_gap) r["richardson_gap"] = *st.richardson_gap;
    if (truth != nullptr && truth->final_residual() > 0.0)
      r["gap_vs_true"] = st.final_residual() / truth->final_residual();
    r["status"] = st.floor_limited ? "floor-limited" : converged ? "converged" : "not-converged";
    r["pass"] = converged;
    results.push_back(r);
    return st;
  };
  for (const IntegralSpec& spec : specs) {
    const ConvergenceStudy truth = run(spec, false, nullptr);
    if (c.control) run(corrupted_control(spec), true, &truth);
  }

  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "gridcheck";
  j["family"] = e.name();
  j["params"] = params_json(e.params);
  j["mode"] = "quantum";
  j["seed"] = c.seed;
  j["tests"] = c.tests;
  j["box"] = {box.x_min, box.x_max, box.y_min, box.y_max};
  j["h"] = hs;
  j["results"] = results;
  j["pass"] = pass;
  j["timestamp"] = timestamp();
  emit(j, c.output);
  return pass ? kSuccess : kVerificationFailure;
}

int cmd_elliptic_selftest(const CampaignConfig& c) {
  const SelftestReport rep = elliptic_selftest(c.dn_fault);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "elliptic-selftest";
  j["dn_fault"] = c.dn_fault;
  j["results"] = json::array();
  for (const auto& ch : rep.checks)
    j["results"].push_back({{"check", ch.name},
                            {"k", ch.k},
                            {"max_error", ch.max_error},
                            {"tolerance", ch.tolerance},
                            {"pass", ch.pass}});
  j["pass"] = rep.pass;
  j["timestamp"] = timestamp();
  emit(j, c.output);
  return rep.pass ? kSuccess : kVerificationFailure;
}

}  // namespace superint::cli
