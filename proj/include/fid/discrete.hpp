#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "fid/fiducial.hpp"
#include "fid/random.hpp"

namespace fid {

// Law of the auxiliary variable of the digitized location model: atoms at
// k*d for integer k, with d > 0 the digital resolution.
//
// When constructed from integer weights the pmf is held as exact rationals
// over a common denominator and all CDF enumeration happens on integers, so
// tail probabilities are bit-stable; atoms make floating ties dangerous
// otherwise. Enumeration always runs in ascending support order.
class DigitizedLaw {
 public:
  static DigitizedLaw from_weights(double resolution,
                                   std::vector<std::pair<int, std::int64_t>> weights);
  static DigitizedLaw from_probabilities(double resolution,
                                         std::vector<std::pair<int, double>> pmf);

  double resolution() const { return resolution_; }
  const std::vector<std::pair<int, double>>& pmf() const { return pmf_; }
  bool exact() const { return denominator_ != 0; }

  /// P(U >= t), P(U <= t) and P(U < t) over the support.
  double prob_geq(double t) const;
  double cdf(double t) const;
  double cdf_left(double t) const;

  double mean() const;
  double third_central_moment() const;

  /// Inverse-transform draw, returning a support point k*d.
  double sample(RandomSource& rng) const;

 private:
  DigitizedLaw() = default;
  void validate() const;

  double resolution_ = 1.0;
  std::vector<std::pair<int, double>> pmf_;             // ascending k
  std::vector<std::pair<int, std::int64_t>> weights_;   // ascending k, exact form
  std::int64_t denominator_ = 0;                        // 0 when only doubles given
};

/// Exact fiducial CDF C(theta|x) = 1 - F(x-|theta) of the digitized location
/// model x = theta + u: a right-continuous step function of theta with steps
/// on x minus the support.
double digitized_fiducial_cdf(const DigitizedLaw& law, double x, double theta);

/// Fiducial mean x - E[U], computed exactly from the pmf.
double digitized_fiducial_mean(const DigitizedLaw& law, double x);

/// The digitized location model as a generic fiducial model.
FiducialModel make_digitized_model(const DigitizedLaw& law);

/// SamplingCdf of the digitized model with exact atom-aware left limits.
SamplingCdf make_digitized_sampling_cdf(DigitizedLaw law);

// Gaussian mean with known variance, inference through the sample mean
// x_bar = mu + sigma*u_bar, with the restriction mu < mu_max.
struct TruncatedMeanModel {
  double sigma;
  int n;
  double mu_max;
};

// Density part on an interval plus discrete point masses; the density part
// is deliberately not renormalized. density_support_hi marks where the
// density part ends; quadrature never crosses it (the density has a jump
// there, which adaptive Simpson must not straddle).
struct MixedDistribution {
  std::function<double(double)> density;
  std::vector<std::pair<double, double>> point_masses;  // (location, mass)
  double density_support_hi = std::numeric_limits<double>::infinity();

  double cdf(double t) const;
  double total_mass() const;
};

/// Candidate A: draws of mu from the base fiducial N(x_bar, sigma^2/n)
/// conditioned on mu < mu_max, by rejection (u-draws with no solution are
/// dropped). Throws RejectionStall when the acceptance probability is below
/// 1e-6; callers should then use truncated_fiducial_a_inverse.
FiducialSample truncated_fiducial_a(const TruncatedMeanModel& model, double x_bar,
                                    RandomSource& rng, std::size_t m);

/// The same truncated law drawn by inverse-CDF transform; works at any
/// acceptance probability.
FiducialSample truncated_fiducial_a_inverse(const TruncatedMeanModel& model, double x_bar,
                                            RandomSource& rng, std::size_t m);

/// Probability that a simulated u leads to no solution, i.e. the mass the
/// unrestricted fiducial puts at mu >= mu_max: Phi(sqrt(n)(x_bar-mu_max)/sigma).
double truncated_pointmass(const TruncatedMeanModel& model, double x_bar);

/// Candidate B: the unrestricted fiducial density kept (not renormalized) on
/// mu < mu_max, plus a single point mass at mu_max carrying the leftover
/// probability.
MixedDistribution truncated_fiducial_b(const TruncatedMeanModel& model, double x_bar);

}  // namespace fid
