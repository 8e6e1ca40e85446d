#include "superint/verification.hpp"

#include <cmath>

#include "superint/determining.hpp"
#include "superint/errors.hpp"

namespace superint {

const char* to_string(Mode m) { return m == Mode::classical ? "classical" : "quantum"; }

Mode parse_mode(const std::string& s) {
  if (s == "classical") return Mode::classical;
  if (s == "quantum") return Mode::quantum;
  throw InvalidParameter("mode must be 'classical' or 'quantum'");
}

std::vector<PointResidual> integral_residuals(const PotentialEntry& entry, const IntegralSpec& spec, Mode mode,
                                              double hbar, Point p) {
  std::vector<PointResidual> out;
  const std::string id = spec.name + "/";
  const Jet V = entry.field->jet(p, 3);
  switch (spec.order) {
    case 1:
      out.push_back({id + "eq", 0, 0});
      {
        const EquationValue e = residual_first_order(spec.C, V, p);
        out.back().value = e.value;
        out.back().scale = e.scale;
      }
      break;
    case 2: {
      const auto r = residual_second_order(spec.B, V, spec.g0.jet(p, 1), p);
      out.push_back({id + "eq_x", r[0].value, r[0].scale});
      out.push_back({id + "eq_y", r[1].value, r[1].scale});
      break;
    }
    case 3: {
      const Jet g1 = spec.g1.jet(p, 1), g2 = spec.g2.jet(p, 1);
      const Residual4 r = mode == Mode::classical ? residual_classical(spec.A, V, g1, g2, p)
                                                  : residual_quantum(spec.A, V, g1, g2, hbar, p);
      for (int n = 0; n < 4; ++n) out.push_back({id + "eq" + std::to_string(n + 1), r[n].value, r[n].scale});
      const EquationValue cl = residual_compatlin(spec.A, V, p);
      out.push_back({id + "compatlin", cl.value, cl.scale});
      if (spec.mechanics == Mechanics::both) {
        const EquationValue cn = residual_condnouv(spec.A, V, p);
        out.push_back({id + "condnouv", cn.value, cn.scale});
      }
      if (entry.one_dimensional) {
        const auto cx = residual_compatx(spec.A, V, p.x);
        out.push_back({id + "compatx_y0", cx[0].value, cx[0].scale});
        out.push_back({id + "compatx_y1", cx[1].value, cx[1].scale});
      }
      break;
    }
    default: throw InvalidParameter("integral order must be 1, 2 or 3");
  }
  return out;
}

void ReportBuilder::add(const PointResidual& r, Point p) {
  Acc* acc = nullptr;
  for (Acc& a : acc_)
    if (a.report.equation == r.equation) acc = &a;
  if (!acc) {
    acc_.push_back({});
    acc = &acc_.back();
    acc->report.equation = r.equation;
    acc->report.seed = seed_;
    acc->report.tolerance = tolerance_;
  }
  ResidualReport& rep = acc->report;
  const double a = std::abs(r.value);
  const double rel = a / (1.0 + r.scale);
  if (!std::isfinite(a)) throw EvaluationError("non-finite residual for " + r.equation);
  rep.max_abs = std::max(rep.max_abs, a);
  rep.scale = std::max(rep.scale, r.scale);
  if (rel > rep.max_rel || rep.n_samples == 0) {
    rep.max_rel = std::max(rep.max_rel, rel);
    rep.worst = p;
  }
  acc->sum_sq += a * a;
  ++rep.n_samples;
}

std::vector<ResidualReport> ReportBuilder::finish() const {
  std::vector<ResidualReport> out;
  for (const Acc& a : acc_) {
    ResidualReport r = a.report;
    r.rms = r.n_samples ? std::sqrt(a.sum_sq / r.n_samples) : 0.0;
    r.pass = r.max_rel <= tolerance_;
    out.push_back(r);
  }
  return out;
}

std::vector<const IntegralSpec*> integrals_for_mode(const PotentialEntry& entry, Mode mode) {
  std::vector<const IntegralSpec*> out;
  for (const auto& s : entry.integrals)
    if (mode == Mode::quantum ? s.quantum_capable() : s.classical_capable()) out.push_back(&s);
  return out;
}

std::vector<ResidualReport> verify_integral(const PotentialEntry& entry, const IntegralSpec& spec, Mode mode,
                                            double hbar, const SampleSet& samples, double tolerance) {
  ReportBuilder b(samples.seed, tolerance);
  for (const Point& p : samples.points)
    for (const auto& r : integral_residuals(entry, spec, mode, hbar, p)) b.add(r, p);
  return b.finish();
}

std::vector<ResidualReport> verify_entry(const PotentialEntry& entry, Mode mode, double hbar,
                                         const SampleSet& samples, double tolerance) {
  ReportBuilder b(samples.seed, tolerance);
  const auto specs = integrals_for_mode(entry, mode);
  for (const Point& p : samples.points) {
    for (const IntegralSpec* s : specs)
      for (const auto& r : integral_residuals(entry, *s, mode, hbar, p)) b.add(r, p);
    if (entry.elliptic_constants) {
      const EquationValue e = residual_elliptique(entry.field->jet(p, 1), *entry.elliptic_constants, entry.hbar, p.x);
      b.add({"elliptique", e.value, e.scale}, p);
    }
  }
  return b.finish();
}

SampleSet entry_samples(const PotentialEntry& entry, int count, std::uint64_t seed) {
  return sample_domain(entry.domain, count, seed, default_margin(entry));
}

bool all_pass(const std::vector<ResidualReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

std::vector<ResidualReport> classical_limit_reports(const PotentialEntry& entry, const SampleSet& samples,
                                                    double hbar_small, double tolerance) {
  ReportBuilder b(samples.seed, tolerance);
  for (const IntegralSpec& spec : entry.integrals) {
    if (spec.order != 3) continue;
    for (const Point& p : samples.points) {
      const Jet V = entry.field->jet(p, 3), g1 = spec.g1.jet(p, 1), g2 = spec.g2.jet(p, 1);
      const Residual4 c = residual_classical(spec.A, V, g1, g2, p);
      const Residual4 q = residual_quantum(spec.A, V, g1, g2, hbar_small, p);
      for (int n = 0; n < 4; ++n)
        b.add({spec.name + "/eq" + std::to_string(n + 1) + "/classical_limit", q[n].value - c[n].value, c[n].scale},
              p);
    }
  }
  return b.finish();
}

}  // namespace superint
