#include "fid/gamma_shape.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "fid/errors.hpp"
#include "fid/rootfind.hpp"
#include "fid/sampling.hpp"
#include "fid/special.hpp"

namespace fid {

namespace {

// Nested inside solve_alpha the quantile tolerance is tightened to 1e-12 so
// solver noise from the inner inversion does not pollute the outer root.
constexpr double kInnerQuantileTol = 1e-12;
constexpr double kOuterAlphaTol = 1e-9;

double bartlett_of_quantiles(std::span<const double> u, double alpha) {
  double log_sum = 0.0;
  double lin_sum = 0.0;
  for (double ui : u) {
    const double q = gamma_inv_cdf(ui, alpha, kInnerQuantileTol);
    lin_sum += q;
    log_sum += std::log(q);
  }
  if (lin_sum == 0.0) return 0.0;  // all quantiles underflowed; w -> 0 limit
  const double n = static_cast<double>(u.size());
  return std::exp(log_sum / n - std::log(lin_sum / n));
}

}  // namespace

double bartlett_statistic(std::span<const double> y) {
  if (y.size() < 2) throw DomainError("bartlett_statistic: need n >= 2");
  double log_sum = 0.0;
  double lin_sum = 0.0;
  for (double v : y) {
    if (!(v > 0.0)) throw DomainError("bartlett_statistic: entries must be positive");
    log_sum += std::log(v);
    lin_sum += v;
  }
  const double n = static_cast<double>(y.size());
  return std::exp(log_sum / n - std::log(lin_sum / n));
}

double bartlett_map(std::span<const double> u, double alpha) {
  if (u.size() < 2) throw DomainError("bartlett_map: need n >= 2");
  if (!(alpha > 0.0)) throw DomainError("bartlett_map: alpha must be positive");
  double umin = 1.0;
  double umax = 0.0;
  for (double ui : u) {
    if (!(ui > 0.0 && ui < 1.0)) throw DomainError("bartlett_map: u entries must lie in (0,1)");
    umin = std::min(umin, ui);
    umax = std::max(umax, ui);
  }
  if (umin == umax) {
    throw DomainError("bartlett_map: all u equal makes the map degenerate (w == 1)");
  }
  return bartlett_of_quantiles(u, alpha);
}

double solve_alpha(std::span<const double> u, double w_obs) {
  if (!(w_obs > 0.0 && w_obs < 1.0)) {
    throw DomainError("solve_alpha: w_obs must lie in (0,1), got " + std::to_string(w_obs));
  }
  double lo = 1.0;
  double hi = 1.0;
  double w_lo = bartlett_map(u, lo);
  double w_hi = w_lo;
  int steps = 0;
  while (w_lo >= w_obs) {
    lo *= 0.5;
    w_lo = bartlett_map(u, lo);
    if (++steps > 200) {
      throw BracketFailure("solve_alpha: w_obs not bracketed from below after 200 halvings");
    }
  }
  steps = 0;
  while (w_hi <= w_obs) {
    hi *= 2.0;
    w_hi = bartlett_map(u, hi);
    if (++steps > 200) {
      throw BracketFailure("solve_alpha: w_obs not bracketed from above after 200 doublings");
    }
  }
  const auto f = [&](double alpha) { return bartlett_of_quantiles(u, alpha) - w_obs; };
  return solve_monotone(f, {lo, hi}, kOuterAlphaTol);
}

FiducialSample fiducial_alpha(std::span<const double> y, RandomSource& rng, std::size_t m) {
  if (m == 0) throw DomainError("fiducial_alpha: need m >= 1");
  const double w_obs = bartlett_statistic(y);
  if (w_obs >= 1.0) {
    throw DomainError("fiducial_alpha: data are all equal; the Bartlett statistic is degenerate");
  }
  FiducialSample sample;
  sample.model_id = "gamma-shape";
  sample.observation = w_obs;
  sample.seed = rng.seed();
  sample.draw_count = m;
  sample.draws.reserve(m);
  std::vector<double> u(y.size());
  for (std::size_t j = 0; j < m; ++j) {
    for (double& ui : u) ui = sample_uniform(rng);
    sample.draws.push_back(solve_alpha(u, w_obs));
  }
  return sample;
}

FiducialModel make_gamma_shape_model(int n) {
  if (n < 2) throw DomainError("make_gamma_shape_model: need n >= 2");
  FiducialModel model;
  model.id = "gamma-shape";
  model.law = {"uniform^n", static_cast<std::size_t>(n),
               [n](RandomSource& rng, std::vector<double>& u) {
                 u.resize(static_cast<std::size_t>(n));
                 for (double& ui : u) ui = sample_uniform(rng);
               }};
  model.forward = [](std::span<const double> u, double alpha) {
    return bartlett_map(u, alpha);
  };
  model.solve = [](std::span<const double> u, double w) {
    return std::optional<double>(solve_alpha(u, w));
  };
  model.direction = Monotonicity::Increasing;
  model.parameter_space = {0.0, std::numeric_limits<double>::infinity()};
  return model;
}

}  // namespace fid
