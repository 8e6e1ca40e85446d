#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "superint/jet.hpp"

namespace superint {

inline constexpr double kDefaultMargin = 0.05;

struct Box {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;

  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

/// Bounding box plus distance to the singular set. A point is admissible with
/// margin m iff it lies in the box and clearance(p) >= m. An empty clearance
/// means no singular set.
struct Domain {
  Box box;
  std::function<double(Point)> clearance;

  double distance_to_singular(Point p) const {
    return clearance ? clearance(p) : std::numeric_limits<double>::infinity();
  }
  bool admissible(Point p, double margin = 0.0) const {
    return box.contains(p) && distance_to_singular(p) >= margin && distance_to_singular(p) > 0.0;
  }
};

struct SampleSet {
  std::uint64_t seed = 0;
  double margin = kDefaultMargin;
  std::vector<Point> points;
};

/// Rejection sampling, uniform in the box. Bit-reproducible for fixed
/// (domain, count, seed, margin). Throws SamplingError when fewer than one in
/// a thousand candidates is accepted.
SampleSet sample_domain(const Domain& domain, int count, std::uint64_t seed,
                        double margin = kDefaultMargin);

}  // namespace superint
