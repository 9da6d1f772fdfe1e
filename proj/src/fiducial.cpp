#include "fid/fiducial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fid/errors.hpp"
#include "fid/sampling.hpp"
#include "fid/special.hpp"

namespace fid {

SamplingCdf continuous_sampling_cdf(std::function<double(double, double)> cdf) {
  SamplingCdf out;
  out.evaluate = cdf;
  out.left_limit = std::move(cdf);
  return out;
}

std::vector<double> sample_data(const FiducialModel& model, double theta, RandomSource& rng,
                                std::size_t m) {
  if (m == 0) throw DomainError("sample_data: need m >= 1");
  if (!model.parameter_space.contains(theta)) {
    throw DomainError("sample_data: theta outside the parameter space of " + model.id);
  }
  std::vector<double> out;
  out.reserve(m);
  std::vector<double> u;
  for (std::size_t j = 0; j < m; ++j) {
    model.law.fill(rng, u);
    out.push_back(model.forward(u, theta));
  }
  return out;
}

FiducialSample sample_fiducial(const FiducialModel& model, double x, RandomSource& rng,
                               std::size_t m) {
  if (m == 0) throw DomainError("sample_fiducial: need m >= 1");
  FiducialSample sample;
  sample.model_id = model.id;
  sample.observation = x;
  sample.seed = rng.seed();
  sample.draw_count = m;
  sample.draws.reserve(m);
  std::vector<double> u;
  for (std::size_t j = 0; j < m; ++j) {
    model.law.fill(rng, u);
    const std::optional<double> theta = model.solve(u, x);
    if (!theta || !model.parameter_space.contains(*theta)) {
      throw NotSimple("sample_fiducial: model " + model.id +
                      " has no parameter-space solution for a simulated u; "
                      "it is not simple at this observation");
    }
    sample.draws.push_back(*theta);
  }
  return sample;
}

double fiducial_cdf_monotone(const SamplingCdf& scdf, double x, double theta,
                             Monotonicity direction) {
  switch (direction) {
    case Monotonicity::Increasing:
      return 1.0 - scdf.left_limit(x, theta);
    case Monotonicity::Decreasing:
      return scdf.evaluate(x, theta);
    case Monotonicity::NonMonotone:
      break;
  }
  throw DomainError("fiducial_cdf_monotone: model must be strictly monotone");
}

double fiducial_percentile(const FiducialSample& sample, double p) {
  if (sample.draws.empty()) throw EmptySample("fiducial_percentile: no draws");
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("fiducial_percentile: p must lie in (0,1)");
  }
  std::vector<double> sorted = sample.draws;
  std::sort(sorted.begin(), sorted.end());
  // Type-7 convention: linear interpolation between adjacent order statistics.
  const double h = p * (static_cast<double>(sorted.size()) - 1.0);
  const auto k = static_cast<std::size_t>(h);
  if (k + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(k);
  return sorted[k] + frac * (sorted[k + 1] - sorted[k]);
}

double fisher_density_check(const SamplingCdf& scdf, double x, double theta, double h) {
  if (!(h > 0.0)) throw DomainError("fisher_density_check: h must be positive");
  return -(scdf.evaluate(x, theta + h) - scdf.evaluate(x, theta - h)) / (2.0 * h);
}

FiducialModel make_location_normal_model(double sd) {
  if (!(sd > 0.0)) throw DomainError("make_location_normal_model: sd must be positive");
  FiducialModel model;
  model.id = "location-normal";
  model.law = {"std-normal", 1, [](RandomSource& rng, std::vector<double>& u) {
                 u.assign(1, sample_std_normal(rng));
               }};
  model.forward = [sd](std::span<const double> u, double theta) { return theta + sd * u[0]; };
  model.solve = [sd](std::span<const double> u, double x) {
    return std::optional<double>(x - sd * u[0]);
  };
  model.direction = Monotonicity::Increasing;
  return model;
}

FiducialModel make_location_cdf_inversion_model(double sd) {
  if (!(sd > 0.0)) throw DomainError("make_location_cdf_inversion_model: sd must be positive");
  FiducialModel model;
  model.id = "location-normal-cdf-inversion";
  model.law = {"uniform", 1, [](RandomSource& rng, std::vector<double>& u) {
                 u.assign(1, sample_uniform(rng));
               }};
  model.forward = [sd](std::span<const double> u, double theta) {
    return theta + sd * std_normal_inv_cdf(u[0]);
  };
  model.solve = [sd](std::span<const double> u, double x) {
    return std::optional<double>(x - sd * std_normal_inv_cdf(u[0]));
  };
  model.direction = Monotonicity::Increasing;
  return model;
}

SamplingCdf make_location_normal_cdf(double sd) {
  if (!(sd > 0.0)) throw DomainError("make_location_normal_cdf: sd must be positive");
  return continuous_sampling_cdf(
      [sd](double x, double theta) { return std_normal_cdf((x - theta) / sd); });
}

}  // namespace fid
