#include "superint/finite_difference.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "superint/errors.hpp"

namespace superint {

namespace {

constexpr std::array<double, 1> kD0{1.0};
constexpr std::array<double, 3> kD1{-0.5, 0.0, 0.5};
constexpr std::array<double, 3> kD2{1.0, -2.0, 1.0};
constexpr std::array<double, 5> kD3{-0.5, 1.0, 0.0, -1.0, 0.5};
constexpr std::array<double, 5> kD4{1.0, -4.0, 6.0, -4.0, 1.0};
constexpr std::array<double, 7> kD5{-0.5, 2.0, -2.5, 0.0, 2.5, -2.0, 0.5};

constexpr int kMaxRadius = 3;

}  // namespace

std::span<const double> central_weights(int m) {
  switch (m) {
    case 0: return kD0;
    case 1: return kD1;
    case 2: return kD2;
    case 3: return kD3;
    case 4: return kD4;
    case 5: return kD5;
    default: throw std::out_of_range("central_weights: derivative order must be in [0, 5]");
  }
}

int central_radius(int m) { return static_cast<int>(central_weights(m).size() / 2); }

double default_fd_step(double coordinate) {
  return std::pow(std::numeric_limits<double>::epsilon(), 0.25) * (1.0 + std::abs(coordinate));
}

Jet fd_jet(const ValueFunction& field, Point p, int order, std::optional<double> h,
           const AdmissiblePredicate& admissible) {
  if (order < 0 || order > kMaxJetOrder) throw std::invalid_argument("fd_jet: order must be in [0, 5]");
  const double hx = h ? *h : default_fd_step(p.x);
  const double hy = h ? *h : default_fd_step(p.y);
  if (!(hx > 0.0) || !(hy > 0.0)) throw std::invalid_argument("fd_jet: step must be positive");

  constexpr int kWidth = 2 * kMaxRadius + 1;
  std::array<double, kWidth * kWidth> cache{};
  std::array<bool, kWidth * kWidth> have{};
  auto sample = [&](int i, int j) {
    const int slot = (i + kMaxRadius) * kWidth + (j + kMaxRadius);
    if (!have[slot]) {
      const Point q{p.x + i * hx, p.y + j * hy};
      if (admissible && !admissible(q)) throw DomainError("fd_jet: stencil leaves the domain");
      const double v = field(q);
      if (!std::isfinite(v)) throw EvaluationError("fd_jet: non-finite sample");
      cache[slot] = v;
      have[slot] = true;
    }
    return cache[slot];
  };

  Jet jet(order);
  for (int d = 0; d <= order; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      const auto wa = central_weights(a);
      const auto wb = central_weights(b);
      const int ra = static_cast<int>(wa.size() / 2), rb = static_cast<int>(wb.size() / 2);
      double sum = 0.0;
      for (int i = -ra; i <= ra; ++i) {
        if (wa[i + ra] == 0.0) continue;
        for (int j = -rb; j <= rb; ++j) {
          if (wb[j + rb] == 0.0) continue;
          sum += wa[i + ra] * wb[j + rb] * sample(i, j);
        }
      }
      jet.set(a, b, sum / (std::pow(hx, a) * std::pow(hy, b)));
    }
  return jet;
}

Jet fd_jet(const ScalarField& field, Point p, int order, std::optional<double> h) {
  return fd_jet([&field](Point q) { return field.value(q); }, p, order, h,
                [&field](Point q) { return field.admissible(q); });
}

}  // namespace superint
