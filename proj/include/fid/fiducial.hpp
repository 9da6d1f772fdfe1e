#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fid/random.hpp"

namespace fid {

enum class Monotonicity { Increasing, Decreasing, NonMonotone };

// Open interval describing the parameter space of a scalar-parameter model.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t > lo && t < hi; }
};

// Named sampler for the auxiliary variable u. `fill` resizes the buffer to
// `dim` and writes one u-draw; the buffer form lets tight sampling loops
// avoid per-draw allocation.
struct MonteCarloLaw {
  std::string name;
  std::size_t dim = 1;
  std::function<void(RandomSource&, std::vector<double>&)> fill;

  std::vector<double> sample(RandomSource& rng) const {
    std::vector<double> u;
    fill(rng, u);
    return u;
  }
};

// A data-generating equation x = forward(u, theta) together with the law of u
// and the solver theta = solve(u, x) of the corresponding equation in theta.
// For simple models the law is theta-free and solve is total.
struct FiducialModel {
  std::string id;
  MonteCarloLaw law;
  std::function<double(std::span<const double>, double)> forward;
  std::function<std::optional<double>(std::span<const double>, double)> solve;
  Monotonicity direction = Monotonicity::Increasing;
  Interval parameter_space{};
};

// Parameter draws produced from one observed x, with provenance.
struct FiducialSample {
  std::vector<double> draws;
  std::string model_id;
  double observation = 0.0;
  std::uint64_t seed = 0;
  std::size_t draw_count = 0;
};

// Sampling-distribution CDF of the observation: evaluate is F(x|theta),
// left_limit is F(x-|theta). For continuous models the two coincide; discrete
// models supply an exact atom-aware left limit rather than a numeric limit.
struct SamplingCdf {
  std::function<double(double, double)> evaluate;
  std::function<double(double, double)> left_limit;
};

/// SamplingCdf for a model with an atom-free observation law.
SamplingCdf continuous_sampling_cdf(std::function<double(double, double)> cdf);

/// m independent draws of the observation at a fixed parameter value.
std::vector<double> sample_data(const FiducialModel& model, double theta, RandomSource& rng,
                                std::size_t m);

/// m independent parameter draws obtained by solving the model equation at
/// the observed x for simulated u. Throws NotSimple if any solve fails or
/// leaves the parameter space.
FiducialSample sample_fiducial(const FiducialModel& model, double x, RandomSource& rng,
                               std::size_t m);

/// Closed-form fiducial CDF of a strictly monotone model:
/// 1 - F(x-|theta) when theta -> forward is increasing, F(x|theta) when
/// decreasing. Throws DomainError for NonMonotone.
double fiducial_cdf_monotone(const SamplingCdf& scdf, double x, double theta,
                             Monotonicity direction);

/// Order-statistic percentile with linear interpolation between order
/// statistics. Throws EmptySample / DomainError on bad input.
double fiducial_percentile(const FiducialSample& sample, double p);

/// Central finite-difference check of the classical identity
/// c(theta|x) = -d/dtheta F(x|theta).
double fisher_density_check(const SamplingCdf& scdf, double x, double theta, double h);

/// Location model x = theta + sd*u with u standard normal.
FiducialModel make_location_normal_model(double sd = 1.0);

/// The same statistical model written through CDF inversion:
/// x = theta + sd*InvPhi(u) with u uniform on (0,1).
FiducialModel make_location_cdf_inversion_model(double sd = 1.0);

/// Sampling CDF F(x|theta) = Phi((x-theta)/sd) shared by the two location
/// models above.
SamplingCdf make_location_normal_cdf(double sd = 1.0);

}  // namespace fid
