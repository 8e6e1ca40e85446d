#pragma once

#include <functional>
#include <optional>
#include <span>

#include "superint/field.hpp"
#include "superint/jet.hpp"

namespace superint {

using ValueFunction = std::function<double(Point)>;

/// Weights of the centered, second-order accurate stencil for d^m/du^m on
/// offsets -r..r (r = 1 for m <= 2, 2 for m <= 4, 3 for m = 5). Not scaled by
/// the step.
std::span<const double> central_weights(int m);
int central_radius(int m);

/// Default step: eps^(1/4) * (1 + |coordinate|).
double default_fd_step(double coordinate);

/// Central-difference estimate of all partials up to `order` (<= 5) from
/// point values only. Error is O(h^2) per partial; exact (to round-off) on
/// polynomials of degree <= m + 1 in each variable.
///
/// Throws DomainError if any stencil node fails `admissible`, EvaluationError
/// on a non-finite sample.
Jet fd_jet(const ValueFunction& field, Point p, int order, std::optional<double> h = std::nullopt,
           const AdmissiblePredicate& admissible = {});

/// Convenience overload sampling a ScalarField through its value().
Jet fd_jet(const ScalarField& field, Point p, int order, std::optional<double> h = std::nullopt);

}  // namespace superint
