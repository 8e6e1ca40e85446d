#include "superint/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "superint/errors.hpp"

namespace superint {

namespace {

struct Mono {
  double c;
  int i, j, k;  // powers of L, p1, p2
};

std::vector<Mono> leading_part(const IntegralSpec& spec) {
  std::vector<Mono> out;
  switch (spec.order) {
    case 3:
      for (std::size_t n = 0; n < kCubic.size(); ++n)
        if (spec.A[n] != 0.0) out.push_back({spec.A[n], kCubic[n].i, kCubic[n].j, kCubic[n].k});
      break;
    case 2:
      for (std::size_t n = 0; n < kQuadratic.size(); ++n)
        if (spec.B[n] != 0.0) out.push_back({spec.B[n], kQuadratic[n].i, kQuadratic[n].j, kQuadratic[n].k});
      break;
    case 1:
      for (std::size_t n = 0; n < kLinear.size(); ++n)
        if (spec.C[n] != 0.0) out.push_back({spec.C[n], kLinear[n].i, kLinear[n].j, kLinear[n].k});
      break;
    default:
      throw InvalidParameter("integral order must be 1, 2 or 3");
  }
  return out;
}

double ipow(double b, int e) {
  double r = 1.0;
  for (int n = 0; n < e; ++n) r *= b;
  return r;
}

// P(L, p1, p2) and its partials.
struct PolyEval {
  double P = 0, PL = 0, P1 = 0, P2 = 0;
};

PolyEval eval_poly(const std::vector<Mono>& ms, double L, double p1, double p2) {
  PolyEval e;
  for (const Mono& m : ms) {
    e.P += m.c * ipow(L, m.i) * ipow(p1, m.j) * ipow(p2, m.k);
    if (m.i > 0) e.PL += m.c * m.i * ipow(L, m.i - 1) * ipow(p1, m.j) * ipow(p2, m.k);
    if (m.j > 0) e.P1 += m.c * m.j * ipow(L, m.i) * ipow(p1, m.j - 1) * ipow(p2, m.k);
    if (m.k > 0) e.P2 += m.c * m.k * ipow(L, m.i) * ipow(p1, m.j) * ipow(p2, m.k - 1);
  }
  return e;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " is not finite at the state");
  return v;
}

void check_jet(const Jet& j, const char* what) {
  checked(j.value(), what);
  checked(j.x(), what);
  checked(j.y(), what);
}

}  // namespace

double eval_observable(const IntegralSpec& spec, const PhasePoint& s) {
  const double L = s.x * s.p2 - s.y * s.p1;
  double v = eval_poly(leading_part(spec), L, s.p1, s.p2).P;
  const Point q = s.position();
  if (spec.order == 3) {
    if (!spec.g1.empty()) v += checked(spec.g1.value(q), "g1") * s.p1;
    if (!spec.g2.empty()) v += checked(spec.g2.value(q), "g2") * s.p2;
  } else if (spec.order == 2 && !spec.g0.empty()) {
    v += checked(spec.g0.value(q), "g0");
  }
  return v;
}

double poisson_bracket_H(const IntegralSpec& spec, const Jet& V, const Jet& g1, const Jet& g2, const PhasePoint& s,
                         const Jet* g0) {
  const double L = s.x * s.p2 - s.y * s.p1;
  const PolyEval e = eval_poly(leading_part(spec), L, s.p1, s.p2);
  double Xx = e.PL * s.p2, Xy = -e.PL * s.p1;
  double Xp1 = -s.y * e.PL + e.P1, Xp2 = s.x * e.PL + e.P2;
  if (spec.order == 3) {
    Xx += g1.x() * s.p1 + g2.x() * s.p2;
    Xy += g1.y() * s.p1 + g2.y() * s.p2;
    Xp1 += g1.value();
    Xp2 += g2.value();
  } else if (spec.order == 2 && g0 != nullptr) {
    Xx += g0->x();
    Xy += g0->y();
  }
  return Xx * s.p1 + Xy * s.p2 - Xp1 * V.x() - Xp2 * V.y();
}

double poisson_bracket_H(const PotentialEntry& entry, const IntegralSpec& spec, const PhasePoint& s) {
  const Point q = s.position();
  const Jet V = entry.field->jet(q, 1);
  check_jet(V, "V");
  const Jet g1 = spec.g1.jet(q, 1), g2 = spec.g2.jet(q, 1), g0 = spec.g0.jet(q, 1);
  check_jet(g1, "g1");
  check_jet(g2, "g2");
  check_jet(g0, "g0");
  return poisson_bracket_H(spec, V, g1, g2, s, &g0);
}

double fd_poisson_bracket_H(const PotentialEntry& entry, const IntegralSpec& spec, const PhasePoint& s, double h,
                            double* scale) {
  auto X = [&](PhasePoint t) { return eval_observable(spec, t); };
  auto V = [&](double x, double y) { return checked(entry.field->value({x, y}), "V"); };
  auto shifted = [&](int c, double d) {
    PhasePoint t = s;
    double* f[4] = {&t.x, &t.y, &t.p1, &t.p2};
    *f[c] += d;
    return t;
  };
  double dX[4];
  for (int c = 0; c < 4; ++c) dX[c] = (X(shifted(c, h)) - X(shifted(c, -h))) / (2 * h);
  const double Vx = (V(s.x + h, s.y) - V(s.x - h, s.y)) / (2 * h);
  const double Vy = (V(s.x, s.y + h) - V(s.x, s.y - h)) / (2 * h);
  const double t[4] = {dX[0] * s.p1, dX[1] * s.p2, -dX[2] * Vx, -dX[3] * Vy};
  if (scale != nullptr) *scale = std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]) + std::abs(t[3]);
  return t[0] + t[1] + t[2] + t[3];
}

std::optional<double> pericenter_estimate(const PotentialEntry& entry, const PhasePoint& s) {
  const double T = 0.5 * (s.p1 * s.p1 + s.p2 * s.p2);
  switch (entry.family) {
    case Family::coulomb: {
      const double alpha = entry.params.at("alpha");
      const double r0 = std::hypot(s.x, s.y);
      const double E = T + alpha / r0;
      const double L = s.x * s.p2 - s.y * s.p1;
      double rmin;
      if (L == 0.0) {
        // Radial motion: falls in when attractive, turns at alpha / E otherwise.
        const bool outward = s.x * s.p1 + s.y * s.p2 > 0.0;
        if (alpha < 0.0) rmin = (outward && E >= 0.0) ? r0 : 0.0;
        else rmin = outward ? r0 : alpha / E;
      } else {
        // Smaller root of E r^2 - alpha r - L^2 / 2 = 0, in cancellation-free form.
        rmin = L * L / (std::sqrt(alpha * alpha + 2.0 * E * L * L) - alpha);
      }
      return std::min(rmin, r0);
    }
    case Family::inverse_sq:
    case Family::quantum_inverse_sq:
    case Family::quantum_x2_V4: {
      const double a = entry.family == Family::quantum_x2_V4 ? entry.hbar * entry.hbar : entry.params.at("a");
      const double x0 = std::abs(s.x);
      const double Ex = 0.5 * s.p1 * s.p1 + a / (s.x * s.x);
      const bool outward = s.x * s.p1 >= 0.0;
      if (a > 0.0) return std::min(x0, std::sqrt(a / Ex));
      return (outward && Ex >= 0.0) ? x0 : 0.0;
    }
    default:
      return std::nullopt;
  }
}

TrajectoryRecord integrate(const PotentialEntry& entry, const PhasePoint& s0, double dt, long n_steps,
                           const std::vector<IntegralSpec>& monitors, const IntegrateOptions& opt) {
  if (!(dt > 0.0) || n_steps < 0) throw InvalidParameter("integrate: need dt > 0 and n_steps >= 0");
  for (const auto& m : monitors)
    if (!m.classical_capable()) throw InvalidParameter("integrate: " + m.name + " is not a classical integral");
  auto admissible = [&](Point q) {
    const double d = entry.domain.distance_to_singular(q);
    return d > 0.0 && d >= opt.margin;
  };
  if (!admissible(s0.position())) throw DomainError("integrate: initial position is too close to the singular set");
  if (opt.check_pericenter) {
    if (auto r = pericenter_estimate(entry, s0); r && *r < opt.margin) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "integrate: estimated pericenter %.6g is below the margin %.6g", *r, opt.margin);
      throw DomainError(buf);
    }
  }

  TrajectoryRecord rec;
  for (const auto& m : monitors) rec.names.push_back(m.name);
  rec.X.resize(monitors.size());
  const std::size_t n = static_cast<std::size_t>(n_steps) + 1;
  rec.times.reserve(n);
  rec.states.reserve(n);
  rec.H.reserve(n);
  for (auto& x : rec.X) x.reserve(n);

  auto record = [&](double t, const PhasePoint& s) {
    rec.times.push_back(t);
    rec.states.push_back(s);
    rec.H.push_back(0.5 * (s.p1 * s.p1 + s.p2 * s.p2) + entry.field->value(s.position()));
    for (std::size_t m = 0; m < monitors.size(); ++m) rec.X[m].push_back(eval_observable(monitors[m], s));
  };

  PhasePoint s = s0;
  record(0.0, s);
  for (long step = 1; step <= n_steps; ++step) {
    PhasePoint t = s;
    t.x += 0.5 * dt * t.p1;
    t.y += 0.5 * dt * t.p2;
    if (!admissible(t.position())) {
      rec.exited = true;
      rec.exit_reason = "left the admissible region at step " + std::to_string(step);
      break;
    }
    const Jet V = entry.field->jet(t.position(), 1);
    t.p1 -= dt * V.x();
    t.p2 -= dt * V.y();
    t.x += 0.5 * dt * t.p1;
    t.y += 0.5 * dt * t.p2;
    const double size = std::max({std::abs(t.x), std::abs(t.y), std::abs(t.p1), std::abs(t.p2)});
    if (!(size <= opt.instability_bound))
      throw InstabilityError("integrate: state exceeded the instability bound at step " + std::to_string(step));
    if (!admissible(t.position())) {
      rec.exited = true;
      rec.exit_reason = "left the admissible region at step " + std::to_string(step);
      break;
    }
    s = t;
    record(static_cast<double>(step) * dt, s);
  }

  auto drift = [](const std::vector<double>& q, std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t n = lo; n < hi; ++n) m = std::max(m, std::abs(q[n] - q[lo]));
    return m / (1.0 + std::abs(q[lo]));
  };
  const std::size_t N = rec.times.size(), mid = N / 2;
  auto summarise = [&](const std::vector<double>& q) {
    rec.drift.push_back(drift(q, 0, N));
    rec.drift_first_half.push_back(drift(q, 0, std::max<std::size_t>(mid, 1)));
    rec.drift_second_half.push_back(drift(q, mid, N));
  };
  summarise(rec.H);
  for (const auto& x : rec.X) summarise(x);
  return rec;
}

std::vector<IntegralSpec> classical_monitors(const PotentialEntry& entry) {
  std::vector<IntegralSpec> out;
  for (const auto& s : entry.integrals)
    if (s.classical_capable()) out.push_back(s);
  return out;
}

void write_csv(const TrajectoryRecord& rec, std::ostream& out) {
  out << "t,x,y,p1,p2,H";
  for (const auto& n : rec.names) out << ",X_" << n;
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t n = 0; n < rec.times.size(); ++n) {
    const PhasePoint& s = rec.states[n];
    put(rec.times[n]);
    for (double v : {s.x, s.y, s.p1, s.p2, rec.H[n]}) {
      out << ',';
      put(v);
    }
    for (const auto& x : rec.X) {
      out << ',';
      put(x[n]);
    }
    out << '\n';
  }
}

}  // namespace superint
