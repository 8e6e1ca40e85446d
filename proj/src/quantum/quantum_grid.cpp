#include "superint/quantum_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "superint/determining.hpp"
#include "superint/elliptic.hpp"
#include "superint/errors.hpp"
#include "superint/finite_difference.hpp"

namespace superint {

int GridSpec::nx() const { return static_cast<int>(std::lround((box.x_max - box.x_min) / h)) + 1; }
int GridSpec::ny() const { return static_cast<int>(std::lround((box.y_max - box.y_min) / h)) + 1; }

GridSpec make_grid(const Box& box, double h, int margin) {
  if (!(h > 0.0)) throw InvalidParameter("grid spacing must be positive");
  if (margin < 3) throw InvalidParameter("grid margin must be at least 3 cells");
  for (double w : {box.x_max - box.x_min, box.y_max - box.y_min}) {
    if (!(w > 0.0)) throw InvalidParameter("grid box is empty");
    const double n = w / h;
    if (std::abs(n - std::round(n)) > 1e-9 * n) throw InvalidParameter("grid extents must be multiples of h");
  }
  GridSpec g{box, h, margin};
  if (g.nx() <= 2 * margin || g.ny() <= 2 * margin) throw InvalidParameter("grid interior is empty");
  return g;
}

double interior_norm(const GridFunction& u) { return std::sqrt(std::abs(interior_inner(u, u))); }

cplx interior_inner(const GridFunction& a, const GridFunction& b) {
  const GridSpec& g = a.grid;
  cplx s = 0.0;
  for (int j = g.margin; j < g.ny() - g.margin; ++j)
    for (int i = g.margin; i < g.nx() - g.margin; ++i) s += std::conj(a(i, j)) * b(i, j);
  return s * (g.h * g.h);
}

GridReal sample_field(const ScalarField& f, const GridSpec& g, const Domain* domain, double clearance) {
  const int nx = g.nx(), ny = g.ny();
  GridReal out(static_cast<std::size_t>(nx) * ny);
  auto check = [&](Point p, double v) {
    if (domain != nullptr && domain->distance_to_singular(p) < clearance)
      throw DomainError("grid node closer than the margin to the singular set");
    if (!std::isfinite(v)) throw DomainError("field is not finite on the grid");
    return v;
  };
  if (f.x_only()) {
    for (int i = 0; i < nx; ++i) {
      const Point p{g.x(i), g.y(0)};
      const double v = check(p, f.value(p));
      for (int j = 0; j < ny; ++j) {
        if (domain != nullptr) check({g.x(i), g.y(j)}, v);
        out[static_cast<std::size_t>(j) * nx + i] = v;
      }
    }
  } else {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const Point p{g.x(i), g.y(j)};
        out[static_cast<std::size_t>(j) * nx + i] = check(p, f.value(p));
      }
  }
  return out;
}

GridFunction grid_derivative(const GridFunction& u, int a, int b) {
  const GridSpec& g = u.grid;
  const int nx = g.nx(), ny = g.ny();
  auto pass = [&](const GridFunction& in, int m, bool along_x) {
    if (m == 0) return in;
    const auto w = central_weights(m);
    const int r = central_radius(m);
    const double scale = 1.0 / std::pow(g.h, m);
    GridFunction out(g);
    for (int j = along_x ? 0 : r; j < (along_x ? ny : ny - r); ++j)
      for (int i = along_x ? r : 0; i < (along_x ? nx - r : nx); ++i) {
        cplx s = 0.0;
        for (int o = -r; o <= r; ++o) {
          const double c = w[static_cast<std::size_t>(o + r)];
          if (c != 0.0) s += c * (along_x ? in(i + o, j) : in(i, j + o));
        }
        out(i, j) = s * scale;
      }
    return out;
  };
  return pass(pass(u, a, true), b, false);
}

namespace {

cplx minus_i_hbar_pow(double hbar, int n) {
  cplx f = 1.0;
  for (int k = 0; k < n; ++k) f *= cplx(0.0, -hbar);
  return f;
}

void check_powers(const GridSpec& g, int a, int b) {
  if (a < 0 || b < 0 || a + b > 3) throw InvalidParameter("symmetrized term needs a, b >= 0 and a + b <= 3");
  const int reach = (a > 0 ? central_radius(a) : 0) + (b > 0 ? central_radius(b) : 0);
  if (g.margin < reach) throw InvalidParameter("stencil reach exceeds the grid margin");
}

}  // namespace

GridFunction apply_sym_term(const GridReal& f, int a, int b, double hbar, const GridFunction& psi) {
  check_powers(psi.grid, a, b);
  const std::size_t n = psi.v.size();
  if (f.size() != n) throw InvalidParameter("coefficient does not match the grid");
  GridFunction out(psi.grid);
  if (a + b == 0) {
    for (std::size_t k = 0; k < n; ++k) out.v[k] = 2.0 * f[k] * psi.v[k];
    return out;
  }
  GridFunction fpsi(psi.grid);
  for (std::size_t k = 0; k < n; ++k) fpsi.v[k] = f[k] * psi.v[k];
  const GridFunction d1 = grid_derivative(psi, a, b);
  const GridFunction d2 = grid_derivative(fpsi, a, b);
  const cplx c = minus_i_hbar_pow(hbar, a + b);
  for (std::size_t k = 0; k < n; ++k) out.v[k] = c * (f[k] * d1.v[k] + d2.v[k]);
  return out;
}

GridFunction apply_sym_term(const ScalarField& f, int a, int b, double hbar, const GridFunction& psi) {
  return apply_sym_term(sample_field(f, psi.grid), a, b, hbar, psi);
}

GridFunction GridOperator::apply(const GridFunction& psi) const {
  GridFunction out(grid);
  for (const Term& t : terms) {
    const GridFunction r = apply_sym_term(t.f, t.a, t.b, hbar, psi);
    for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] += r.v[k];
  }
  return out;
}

GridOperator hamiltonian_operator(const PotentialEntry& entry, double hbar, const GridSpec& g) {
  const std::size_t n = static_cast<std::size_t>(g.nx()) * g.ny();
  GridOperator H{g, hbar, {}};
  // {1/4, p^2} = p^2 / 2 and {V/2, 1} = V.
  H.terms.push_back({GridReal(n, 0.25), 2, 0});
  H.terms.push_back({GridReal(n, 0.25), 0, 2});
  GridReal v = sample_field(*entry.field, g, &entry.domain);
  for (double& x : v) x *= 0.5;
  H.terms.push_back({std::move(v), 0, 0});
  return H;
}

GridFunction apply_H(const PotentialEntry& entry, double hbar, const GridFunction& psi) {
  return hamiltonian_operator(entry, hbar, psi.grid).apply(psi);
}

GridOperator integral_operator(const PotentialEntry& entry, const IntegralSpec& spec, double hbar,
                               const GridSpec& g) {
  const int nx = g.nx(), ny = g.ny();
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  const double h2 = hbar * hbar;
  GridOperator X{g, hbar, {}};
  auto polynomial = [&](auto&& fn) {
    GridReal out(n);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) out[static_cast<std::size_t>(j) * nx + i] = fn(g.x(i), g.y(j));
    return out;
  };
  auto add = [&](GridReal f, int a, int b) {
    if (std::any_of(f.begin(), f.end(), [](double v) { return v != 0.0; })) X.terms.push_back({std::move(f), a, b});
  };
  auto field_or_zero = [&](const LinearField& lf) {
    return lf.empty() ? GridReal(n, 0.0) : sample_field(*lf.as_field(), g, &entry.domain);
  };

  if (spec.order == 3) {
    const Cubic& A = spec.A;
    for (int m = 0; m < 4; ++m) {
      add(polynomial([&](double x, double y) {
            const FPolyValues f = f_polys(A, {x, y});
            return m == 0 ? f.f1 : m == 1 ? f.f2 : m == 2 ? f.f3 : f.f4;
          }),
          3 - m, m);
    }
    GridReal g1 = field_or_zero(spec.g1), g2 = field_or_zero(spec.g2);
    const double a300 = spec.a(3, 0, 0), a210 = spec.a(2, 1, 0), a201 = spec.a(2, 0, 1);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * nx + i;
        g1[k] += -1.5 * h2 * a210 + 5.0 * h2 * a300 * g.y(j);
        g2[k] += -1.5 * h2 * a201 - 5.0 * h2 * a300 * g.x(i);
      }
    add(std::move(g1), 1, 0);
    add(std::move(g2), 0, 1);
  } else if (spec.order == 2) {
    const Quadratic& B = spec.B;
    const double b200 = spec.b(2, 0, 0), b110 = spec.b(1, 1, 0), b101 = spec.b(1, 0, 1);
    add(polynomial([&](double, double y) { return b200 * y * y - b110 * y + spec.b(0, 2, 0); }), 2, 0);
    add(polynomial([&](double x, double y) { return -2 * b200 * x * y + b110 * x - b101 * y + spec.b(0, 1, 1); }),
        1, 1);
    add(polynomial([&](double x, double) { return b200 * x * x + b101 * x + spec.b(0, 0, 2); }), 0, 2);
    (void)B;
    GridReal g0 = field_or_zero(spec.g0);
    for (double& v : g0) v += -h2 * b200;
    add(std::move(g0), 0, 0);
    return X;
  } else if (spec.order == 1) {
    const double cl = spec.C[linear_index(1, 0, 0)], c1 = spec.C[linear_index(0, 1, 0)],
                 c2 = spec.C[linear_index(0, 0, 1)];
    add(polynomial([&](double, double y) { return c1 - cl * y; }), 1, 0);
    add(polynomial([&](double x, double) { return c2 + cl * x; }), 0, 1);
  } else {
    throw InvalidParameter("integral order must be 1, 2 or 3");
  }
  // Controls may carry an extra multiplication operator in g0.
  if (!spec.g0.empty()) add(field_or_zero(spec.g0), 0, 0);
  return X;
}

GridFunction Gaussian::sample(const GridSpec& g) const {
  GridFunction out(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double dx = (g.x(i) - cx) / sx, dy = (g.y(j) - cy) / sy;
      out(i, j) = std::exp(cplx(-0.5 * (dx * dx + dy * dy), kx * g.x(i) + ky * g.y(j)));
    }
  return out;
}

std::vector<Gaussian> seeded_gaussians(const Box& box, double h_coarse, int count, std::uint64_t seed) {
  const double wx = box.x_max - box.x_min, wy = box.y_max - box.y_min;
  const double s_lo = 5.0 * h_coarse, s_hi = std::min(wx, wy) / 8.0;
  if (!(s_hi >= s_lo)) throw InvalidParameter("grid box too small for the coarsest spacing");
  const double edge = 4.0 * 3.0 * h_coarse;  // 4 radii of the widest composite stencil
  if (!(wx > 2 * edge && wy > 2 * edge)) throw InvalidParameter("grid box too small for test functions");
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Gaussian> out;
  for (int n = 0; n < count; ++n) {
    Gaussian gs;
    gs.cx = box.x_min + edge + unit() * (wx - 2 * edge);
    gs.cy = box.y_min + edge + unit() * (wy - 2 * edge);
    gs.sx = s_lo + unit() * (s_hi - s_lo);
    gs.sy = s_lo + unit() * (s_hi - s_lo);
    gs.kx = -1.0 + 2.0 * unit();
    gs.ky = -1.0 + 2.0 * unit();
    out.push_back(gs);
  }
  return out;
}

CommutatorResult commutator_residual(const PotentialEntry& entry, const IntegralSpec& spec, double hbar,
                                     const GridSpec& g, const std::vector<Gaussian>& tests, bool estimate_floor) {
  if (!spec.quantum_capable()) throw InvalidParameter(spec.name + " is not a quantum integral");
  const GridOperator H = hamiltonian_operator(entry, hbar, g);
  const GridOperator X = integral_operator(entry, spec, hbar, g);
  auto commutator = [&](const GridFunction& psi) {
    GridFunction d = H.apply(X.apply(psi));
    const GridFunction xh = X.apply(H.apply(psi));
    for (std::size_t k = 0; k < d.v.size(); ++k) d.v[k] -= xh.v[k];
    return d;
  };
  CommutatorResult r;
  for (const Gaussian& t : tests) {
    const GridFunction psi = t.sample(g);
    const GridFunction d = commutator(psi);
    const double np = interior_norm(psi);
    r.residual.push_back(interior_norm(d) / np);
    if (estimate_floor) {
      // The operators are linear, so any difference between d and the
      // rescaled commutator of psi / 3 is rounding noise.
      GridFunction third = psi;
      for (auto& v : third.v) v /= 3.0;
      GridFunction e = commutator(third);
      for (std::size_t k = 0; k < e.v.size(); ++k) e.v[k] = 3.0 * e.v[k] - d.v[k];
      r.floor.push_back(interior_norm(e) / np);
    }
  }
  r.aggregate = *std::max_element(r.residual.begin(), r.residual.end());
  if (estimate_floor) r.aggregate_floor = *std::max_element(r.floor.begin(), r.floor.end());
  return r;
}

ConvergenceStudy convergence_order(const PotentialEntry& entry, const IntegralSpec& spec, double hbar,
                                   const Box& box, const std::vector<double>& hs,
                                   const std::vector<Gaussian>& tests, int margin) {
  if (hs.size() < 2) throw InvalidParameter("convergence study needs at least two grid levels");
  if (tests.empty()) throw InvalidParameter("convergence study needs test functions");
  ConvergenceStudy s;
  s.h = hs;
  const Box b = snap_box(box, hs.front());
  for (double h : hs) s.levels.push_back(commutator_residual(entry, spec, hbar, make_grid(b, h, margin), tests));
  // Rounding noise of the worst test function on the finest grid.
  CommutatorResult& fine = s.levels.back();
  const auto worst = std::max_element(fine.residual.begin(), fine.residual.end()) - fine.residual.begin();
  fine.aggregate_floor =
      commutator_residual(entry, spec, hbar, make_grid(b, hs.back(), margin), {tests[static_cast<std::size_t>(worst)]}, true)
          .aggregate_floor;
  for (std::size_t l = 1; l < hs.size(); ++l) {
    const double ratio = hs[l - 1] / hs[l];
    s.order.push_back(std::log(s.levels[l - 1].aggregate / s.levels[l].aggregate) / std::log(ratio));
    std::vector<double> po;
    for (std::size_t t = 0; t < tests.size(); ++t)
      po.push_back(std::log(s.levels[l - 1].residual[t] / s.levels[l].residual[t]) / std::log(ratio));
    s.psi_order.push_back(std::move(po));
  }
  s.floor_limited = s.levels.back().aggregate < 100.0 * s.levels.back().aggregate_floor;
  if (s.order.size() >= 2) s.richardson_gap = std::abs(s.order[s.order.size() - 1] - s.order[s.order.size() - 2]);
  return s;
}

Box default_grid_box(const PotentialEntry& entry) {
  const double w = entry.params.count("omega") ? entry.params.at("omega") : 1.0;
  switch (entry.family) {
    case Family::coulomb:
      return {0.5, 2.5, -1.0, 1.0};
    case Family::inverse_sq:
    case Family::quantum_inverse_sq:
    case Family::quantum_x2_V4:
      return {0.5, 3.0, -1.0, 1.0};
    case Family::elliptic_V2: {
      // Between the poles at w x = 0 and w x = 2K.
      const double K = ellip_k(entry.params.at("k")) / w;
      return {0.3 * K, 1.7 * K, -1.0, 1.0};
    }
    case Family::elliptic_V3: {
      const double K = ellip_k(entry.params.at("k")) / w;
      return {-K, K, -1.0, 1.0};
    }
    case Family::trig_V2a: {
      // 1/sin^2: between the poles at w x = 0 and pi.
      const double P = M_PI / w;
      return {0.15 * P, 0.85 * P, -1.0, 1.0};
    }
    case Family::hyperbolic_V2b:
      return {0.4 / w, 2.4 / w, -1.0, 1.0};
    default:
      return {-1.5, 1.5, -1.0, 1.0};
  }
}

Box snap_box(const Box& box, double h) {
  Box b = box;
  b.x_max = b.x_min + std::floor((box.x_max - box.x_min) / h + 1e-9) * h;
  b.y_max = b.y_min + std::floor((box.y_max - box.y_min) / h + 1e-9) * h;
  return b;
}

IntegralSpec corrupted_control(const IntegralSpec& spec) {
  IntegralSpec c = spec;
  c.name = spec.name + "_control";
  bool changed = false;
  for (LinearField* f : {&c.g1, &c.g2, &c.g0}) {
    if (f->empty()) continue;
    *f = f->scaled(4.0 / 3.0);
    changed = true;
  }
  if (!changed) {
    c.g0.add(1.0 / 3.0, make_field([](const Taylor& x, const Taylor& y) { return x * x + y * y; }), "r^2");
  }
  return c;
}

void write_convergence_csv(const std::string& spec_name, const ConvergenceStudy& s, std::ostream& out,
                           bool header) {
  if (header) out << "spec,test_function,h,residual,order_estimate\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t l = 0; l < s.h.size(); ++l) {
    const auto& lv = s.levels[l];
    for (std::size_t t = 0; t < lv.residual.size(); ++t) {
      out << spec_name << ',' << t << ',' << num(s.h[l]) << ',' << num(lv.residual[t]) << ','
          << (l == 0 ? std::string() : num(s.psi_order[l - 1][t])) << '\n';
    }
    out << spec_name << ",aggregate," << num(s.h[l]) << ',' << num(lv.aggregate) << ','
        << (l == 0 ? std::string() : (s.floor_limited && l + 1 == s.h.size() ? std::string("floor-limited")
                                                                             : num(s.order[l - 1])))
        << '\n';
  }
}

}  // namespace superint
