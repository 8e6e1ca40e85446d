#include "superint/sampling.hpp"

#include <random>
#include <stdexcept>

#include "superint/errors.hpp"

namespace superint {

namespace {

// 53 random bits mapped to [0, 1); independent of the standard library's
// distribution implementations.
double unit(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

SampleSet sample_domain(const Domain& domain, int count, std::uint64_t seed, double margin) {
  if (count < 1) throw std::invalid_argument("sample_domain: count must be >= 1");
  const Box& b = domain.box;
  if (!(b.x_max > b.x_min) || !(b.y_max > b.y_min))
    throw std::invalid_argument("sample_domain: empty bounding box");

  constexpr double kMinAcceptance = 1e-3;
  const long long max_attempts = std::max<long long>(1000, static_cast<long long>(count / kMinAcceptance));

  std::mt19937_64 gen(seed);
  SampleSet set{seed, margin, {}};
  set.points.reserve(count);
  long long attempts = 0;
  while (static_cast<int>(set.points.size()) < count) {
    if (++attempts > max_attempts)
      throw SamplingError("sample_domain: acceptance rate below 1e-3 (domain too thin for the margin)");
    const Point p{b.x_min + (b.x_max - b.x_min) * unit(gen), b.y_min + (b.y_max - b.y_min) * unit(gen)};
    if (domain.admissible(p, margin)) set.points.push_back(p);
  }
  return set;
}

}  // namespace superint
