#include "fid/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fid/errors.hpp"
#include "fid/quadrature.hpp"
#include "fid/sampling.hpp"
#include "fid/special.hpp"

namespace fid {

DigitizedLaw DigitizedLaw::from_weights(double resolution,
                                        std::vector<std::pair<int, std::int64_t>> weights) {
  if (!(resolution > 0.0)) throw DomainError("DigitizedLaw: resolution must be positive");
  if (weights.empty()) throw DomainError("DigitizedLaw: empty support");
  std::sort(weights.begin(), weights.end());
  std::int64_t total = 0;
  for (const auto& [k, w] : weights) {
    if (w < 0) throw DomainError("DigitizedLaw: negative weight at support point " +
                                 std::to_string(k));
    total += w;
  }
  if (total <= 0) throw DomainError("DigitizedLaw: weights sum to zero");
  DigitizedLaw law;
  law.resolution_ = resolution;
  law.weights_ = std::move(weights);
  law.denominator_ = total;
  law.pmf_.reserve(law.weights_.size());
  for (const auto& [k, w] : law.weights_) {
    law.pmf_.emplace_back(k, static_cast<double>(w) / static_cast<double>(total));
  }
  law.validate();
  return law;
}

DigitizedLaw DigitizedLaw::from_probabilities(double resolution,
                                              std::vector<std::pair<int, double>> pmf) {
  if (!(resolution > 0.0)) throw DomainError("DigitizedLaw: resolution must be positive");
  if (pmf.empty()) throw DomainError("DigitizedLaw: empty support");
  std::sort(pmf.begin(), pmf.end());
  DigitizedLaw law;
  law.resolution_ = resolution;
  law.pmf_ = std::move(pmf);
  law.validate();
  return law;
}

void DigitizedLaw::validate() const {
  double total = 0.0;
  for (const auto& [k, p] : pmf_) {
    if (!(p >= 0.0)) throw DomainError("DigitizedLaw: negative probability");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw DomainError("DigitizedLaw: probabilities sum to " + std::to_string(total) +
                      ", expected 1");
  }
}

double DigitizedLaw::prob_geq(double t) const {
  if (denominator_ != 0) {
    std::int64_t acc = 0;
    for (const auto& [k, w] : weights_) {
      if (static_cast<double>(k) * resolution_ >= t) acc += w;
    }
    return static_cast<double>(acc) / static_cast<double>(denominator_);
  }
  double acc = 0.0;
  for (const auto& [k, p] : pmf_) {
    if (static_cast<double>(k) * resolution_ >= t) acc += p;
  }
  return acc;
}

double DigitizedLaw::cdf(double t) const {
  if (denominator_ != 0) {
    std::int64_t acc = 0;
    for (const auto& [k, w] : weights_) {
      if (static_cast<double>(k) * resolution_ <= t) acc += w;
    }
    return static_cast<double>(acc) / static_cast<double>(denominator_);
  }
  double acc = 0.0;
  for (const auto& [k, p] : pmf_) {
    if (static_cast<double>(k) * resolution_ <= t) acc += p;
  }
  return acc;
}

double DigitizedLaw::cdf_left(double t) const {
  if (denominator_ != 0) {
    std::int64_t acc = 0;
    for (const auto& [k, w] : weights_) {
      if (static_cast<double>(k) * resolution_ < t) acc += w;
    }
    return static_cast<double>(acc) / static_cast<double>(denominator_);
  }
  double acc = 0.0;
  for (const auto& [k, p] : pmf_) {
    if (static_cast<double>(k) * resolution_ < t) acc += p;
  }
  return acc;
}

double DigitizedLaw::mean() const {
  double acc = 0.0;
  for (const auto& [k, p] : pmf_) acc += static_cast<double>(k) * resolution_ * p;
  return acc;
}

double DigitizedLaw::third_central_moment() const {
  const double mu = mean();
  double acc = 0.0;
  for (const auto& [k, p] : pmf_) {
    const double dev = static_cast<double>(k) * resolution_ - mu;
    acc += dev * dev * dev * p;
  }
  return acc;
}

double DigitizedLaw::sample(RandomSource& rng) const {
  const double u = sample_uniform(rng);
  double acc = 0.0;
  for (const auto& [k, p] : pmf_) {
    acc += p;
    if (u <= acc) return static_cast<double>(k) * resolution_;
  }
  return static_cast<double>(pmf_.back().first) * resolution_;
}

double digitized_fiducial_cdf(const DigitizedLaw& law, double x, double theta) {
  // C(theta|x) = 1 - F(x-|theta) = P(theta + U >= x) = P(U >= x - theta).
  return law.prob_geq(x - theta);
}

double digitized_fiducial_mean(const DigitizedLaw& law, double x) { return x - law.mean(); }

FiducialModel make_digitized_model(const DigitizedLaw& law) {
  FiducialModel model;
  model.id = "digitized";
  model.law = {"digitized", 1, [law](RandomSource& rng, std::vector<double>& u) {
                 u.assign(1, law.sample(rng));
               }};
  model.forward = [](std::span<const double> u, double theta) { return theta + u[0]; };
  model.solve = [](std::span<const double> u, double x) {
    return std::optional<double>(x - u[0]);
  };
  model.direction = Monotonicity::Increasing;
  return model;
}

SamplingCdf make_digitized_sampling_cdf(DigitizedLaw law) {
  SamplingCdf scdf;
  scdf.evaluate = [law](double x, double theta) { return law.cdf(x - theta); };
  scdf.left_limit = [law](double x, double theta) { return law.cdf_left(x - theta); };
  return scdf;
}

namespace {

void require_truncated(const TruncatedMeanModel& model) {
  if (!(model.sigma > 0.0)) throw DomainError("TruncatedMeanModel: sigma must be positive");
  if (model.n < 1) throw DomainError("TruncatedMeanModel: need n >= 1");
}

double mean_sd(const TruncatedMeanModel& model) {
  return model.sigma / std::sqrt(static_cast<double>(model.n));
}

}  // namespace

double truncated_pointmass(const TruncatedMeanModel& model, double x_bar) {
  require_truncated(model);
  return std_normal_cdf((x_bar - model.mu_max) / mean_sd(model));
}

FiducialSample truncated_fiducial_a(const TruncatedMeanModel& model, double x_bar,
                                    RandomSource& rng, std::size_t m) {
  require_truncated(model);
  if (m == 0) throw DomainError("truncated_fiducial_a: need m >= 1");
  const double accept_prob = 1.0 - truncated_pointmass(model, x_bar);
  if (accept_prob < 1e-6) {
    throw RejectionStall(
        "truncated_fiducial_a: acceptance probability " + std::to_string(accept_prob) +
        " below 1e-6; use truncated_fiducial_a_inverse");
  }
  const double sd = mean_sd(model);
  FiducialSample sample;
  sample.model_id = "truncated-mean-A";
  sample.observation = x_bar;
  sample.seed = rng.seed();
  sample.draw_count = m;
  sample.draws.reserve(m);
  while (sample.draws.size() < m) {
    const double mu = x_bar - sd * sample_std_normal(rng);
    if (mu < model.mu_max) sample.draws.push_back(mu);
  }
  return sample;
}

FiducialSample truncated_fiducial_a_inverse(const TruncatedMeanModel& model, double x_bar,
                                            RandomSource& rng, std::size_t m) {
  require_truncated(model);
  if (m == 0) throw DomainError("truncated_fiducial_a_inverse: need m >= 1");
  const double sd = mean_sd(model);
  const double cap = std_normal_cdf((model.mu_max - x_bar) / sd);
  FiducialSample sample;
  sample.model_id = "truncated-mean-A";
  sample.observation = x_bar;
  sample.seed = rng.seed();
  sample.draw_count = m;
  sample.draws.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double u = sample_uniform(rng) * cap;
    sample.draws.push_back(x_bar + sd * std_normal_inv_cdf(u));
  }
  return sample;
}

MixedDistribution truncated_fiducial_b(const TruncatedMeanModel& model, double x_bar) {
  require_truncated(model);
  const double sd = mean_sd(model);
  const double mu_max = model.mu_max;
  MixedDistribution mixed;
  // Left-closed at mu_max: the boundary value equals the left limit so that
  // quadrature up to the cut sees a smooth integrand.
  mixed.density = [x_bar, sd, mu_max](double mu) {
    if (mu > mu_max) return 0.0;
    return std_normal_pdf((mu - x_bar) / sd) / sd;
  };
  mixed.point_masses = {{mu_max, truncated_pointmass(model, x_bar)}};
  mixed.density_support_hi = mu_max;
  return mixed;
}

double MixedDistribution::cdf(double t) const {
  const double cut = std::min(t, density_support_hi);
  double acc = integrate(density, -std::numeric_limits<double>::infinity(), cut, 1e-10);
  for (const auto& [loc, mass] : point_masses) {
    if (loc <= t) acc += mass;
  }
  return acc;
}

double MixedDistribution::total_mass() const {
  double acc = integrate(density, -std::numeric_limits<double>::infinity(),
                         density_support_hi, 1e-10);
  for (const auto& [loc, mass] : point_masses) acc += mass;
  return acc;
}

}  // namespace fid
