#include "fid/sampling.hpp"

#include <cmath>

#include "fid/errors.hpp"

namespace fid {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double sample_uniform(RandomSource& rng) {
  double u;
  do {
    u = rng.next_double();
  } while (u == 0.0);
  return u;
}

double sample_std_normal(RandomSource& rng) {
  const double u1 = sample_uniform(rng);
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double sample_gamma(double shape, RandomSource& rng) {
  if (!(shape > 0.0)) throw DomainError("sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, rng);
    return g * std::pow(sample_uniform(rng), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x;
    double v;
    do {
      x = sample_std_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = sample_uniform(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_chi2(int df, RandomSource& rng) {
  if (df < 1) throw DomainError("sample_chi2: df must be >= 1");
  return 2.0 * sample_gamma(0.5 * static_cast<double>(df), rng);
}

}  // namespace fid
