#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fid/fiducial.hpp"
#include "fid/random.hpp"

namespace fid {

enum class ConditionKind { Difference, Ratio, Projection, PositiveProbabilitySet };

// A fiducial model together with a condition C(theta) = c on the parameter.
// The scalar-parameter positive-probability case is sampled directly here;
// the zero-probability geometries (lines, circles, projections, repeated
// sampling) have dedicated closed-form operations below.
struct ConditionalFiducialModel {
  FiducialModel base;
  std::function<double(double)> condition;
  double target = 0.0;
  ConditionKind kind = ConditionKind::PositiveProbabilitySet;
};

/// Fiducial sample of the conditional model by rejection on the base
/// fiducial; requires kind == PositiveProbabilitySet. Throws RejectionStall
/// if max_attempts_per_draw consecutive proposals are rejected.
FiducialSample sample_conditional(const ConditionalFiducialModel& model, double x,
                                  RandomSource& rng, std::size_t m,
                                  std::size_t max_attempts_per_draw = 1000000);

struct NormalLaw {
  double mean;
  double variance;

  double density(double t) const;
  double cdf(double t) const;
};

/// Conditional law of Theta ~ N(x, I2) on the line theta1 = theta2, using the
/// difference statistic theta1 - theta2 = 0; parameterized by mu = theta1.
NormalLaw line_fiducial_difference(double x1, double x2);

// Conditioning the same plane fiducial on theta1/theta2 = 1 restricts to the
// same line but yields a different law: the ratio parameterization carries a
// |mu| Jacobian.
class LineRatioFiducial {
 public:
  LineRatioFiducial(double x1, double x2, double tol = 1e-10);

  double density(double mu) const;
  double normalization() const { return norm_; }
  double cdf(double t) const;

 private:
  double unnormalized(double mu) const;
  double x1_;
  double x2_;
  double norm_;
};

/// Normalized density at mu of the ratio-conditioned line fiducial.
double line_fiducial_ratio_density(double mu, double x1, double x2);

// Von Mises law on the circle: the fiducial of a plane location known to lie
// on the circle of radius R, given an observation at distance a = |x| from
// the origin. kappa = a*R; kappa == 0 is the uniform circle law.
struct VonMisesLaw {
  double mean_direction;
  double kappa;

  double density(double angle) const;
  /// Best-Fisher rejection sampler; returns an angle in (-pi, pi].
  double sample(RandomSource& rng) const;
};

/// Throws DomainError for R <= 0. |x| == 0 degenerates to the uniform circle.
VonMisesLaw circle_fiducial(double x1, double x2, double R);

// A one-parameter observation family declared by callbacks. cdf is required;
// pdf and dcdf_dalpha fall back to central finite differences (step
// max(1e-5, 1e-5|.|), clamped inside the declared parameter range).
struct Family {
  std::string name;
  std::function<double(double, double)> cdf;          // F(x|alpha)
  std::function<double(double, double)> pdf;          // f(x|alpha), optional
  std::function<double(double, double)> dcdf_dalpha;  // dF/dalpha, optional
  double alpha_lo;
  double alpha_hi;

  double dcdf(double x, double alpha) const;
  double density(double x, double alpha) const;
};

// Families registered by name. "location-normal", "scale-normal" and
// "gamma-shape" are built in.
class FamilyRegistry {
 public:
  static FamilyRegistry& global();

  void add(Family family);
  const Family& get(std::string_view name) const;

 private:
  FamilyRegistry();
  std::vector<Family> families_;
};

// Fiducial density of the common parameter of n iid coordinates, obtained by
// conditioning the joint fiducial on equality of the coordinates:
//   Ratio kind:      c(alpha|x) = K |alpha|^(n-1) prod_i |dF(x_i|alpha)/dalpha|
//   Difference kind: c(alpha|x) = K prod_i |dF(x_i|alpha)/dalpha|
// K is fixed by quadrature over the family's parameter range.
class GtDensity {
 public:
  GtDensity(const Family& family, std::vector<double> data, ConditionKind kind,
            double tol = 1e-9);

  double operator()(double alpha) const;
  double normalization() const { return norm_; }
  double cdf(double t) const;

 private:
  double unnormalized(double alpha) const;
  const Family* family_;
  std::vector<double> data_;
  ConditionKind kind_;
  double norm_;
};

/// One-off evaluation of the conditional density above.
double gt_density(const Family& family, std::span<const double> data, ConditionKind kind,
                  double alpha);

// The recommended iid-sample fiducial density
//   c(alpha|x) = K sum_i |dF(x_i|alpha)/dalpha| prod_{j != i} f(x_j|alpha),
// a Bayes rule applied with the data-dependent prior hannig_prior.
class HannigDensity {
 public:
  HannigDensity(const Family& family, std::vector<double> data, double tol = 1e-9);

  double operator()(double alpha) const;
  double normalization() const { return norm_; }

 private:
  double unnormalized(double alpha) const;
  const Family* family_;
  std::vector<double> data_;
  double norm_;
};

double hannig_density(const Family& family, std::span<const double> data, double alpha);

/// pi(alpha, x) = sum_i |dF(x_i|alpha)/dalpha| / f(x_i|alpha).
/// Throws ZeroDensity if some f(x_i|alpha) == 0.
double hannig_prior(const Family& family, std::span<const double> data, double alpha);

/// Random-walk Metropolis chain targeting exp(log_density); returns the
/// post-burn-in states thinned by `thin`. Throws AllRejected if the
/// acceptance rate falls below 0.001.
std::vector<double> mcmc_sample(const std::function<double(double)>& log_density,
                                double init, std::size_t steps, std::size_t burn_in,
                                double proposal_sd, RandomSource& rng, std::size_t thin = 1);

/// Proposal scale from a pilot grid over [lo, hi]: 2.4 times the target's
/// standard deviation estimated from gridded weights.
double pilot_proposal_sd(const std::function<double(double)>& log_density, double lo,
                         double hi, int grid_points = 512);

// Gaussian law N(Px, P) on a linear subspace, P the orthogonal projection:
// identity covariance in the orthonormal-basis coordinates.
struct SubspaceGaussian {
  std::vector<std::vector<double>> basis;  // orthonormal, spanning the subspace
  std::vector<double> mean_coords;         // B^T x
  std::size_t ambient_dim = 0;

  std::vector<double> mean_point() const;  // P x
  double density_coords(std::span<const double> coords) const;
  std::vector<double> sample(RandomSource& rng) const;  // point in ambient space
};

/// Conditional fiducial of the Gaussian location model x = theta + u
/// (u standard normal in R^k) given that theta lies in the span of the basis:
/// conditioning on the orthogonal-complement projection of x - theta being 0.
/// Throws NonOrthonormalBasis if the Gram matrix deviates from identity by
/// more than 1e-10.
SubspaceGaussian projection_conditional_fiducial(
    const std::vector<double>& x, const std::vector<std::vector<double>>& basis);

/// Epsilon-band rejection oracle for zero-probability conditioning. Draws
/// proposals, keeps `keep(theta)` whenever |statistic(theta) - target| < eps.
/// The choice of band statistic is the caller's: difference and ratio bands
/// around the same set give different limits, which is the point.
std::vector<double> band_rejection_sample(
    const std::function<std::vector<double>(RandomSource&)>& propose,
    const std::function<double(const std::vector<double>&)>& statistic, double target,
    double eps, const std::function<double(const std::vector<double>&)>& keep,
    RandomSource& rng, std::size_t proposals);

}  // namespace fid
