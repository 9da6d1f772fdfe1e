#pragma once

#include <cstddef>
#include <span>

#include "fid/fiducial.hpp"
#include "fid/random.hpp"

namespace fid {

// Gamma sample of size n with known scale. The scale cancels in the Bartlett
// statistic, so inference for the shape depends on the data only through it.
// n >= 2: the statistic is identically 1 at n = 1.
struct GammaShapeModel {
  int n;
  double scale = 1.0;
};

/// Bartlett statistic w = geometric mean / arithmetic mean, in (0,1].
/// Computed in log space. Throws DomainError on nonpositive entries or n < 2.
double bartlett_statistic(std::span<const double> y);

/// w as a function of the shape: the Bartlett statistic of the gamma
/// quantiles F^{-1}(u_i | alpha). Strictly increasing in alpha.
/// Throws DomainError if the u_i are all equal (degenerate map, w == 1).
double bartlett_map(std::span<const double> u, double alpha);

/// Solves bartlett_map(u, alpha) = w_obs for alpha. The bracket is grown
/// geometrically from alpha = 1 (halving the low end, doubling the high end);
/// throws BracketFailure if w_obs is not attained after 200 doublings.
double solve_alpha(std::span<const double> u, double w_obs);

/// Fiducial sample of the gamma shape given positive data y: per draw, a
/// fresh uniform n-vector u and alpha_j = solve_alpha(u, bartlett_statistic(y)).
FiducialSample fiducial_alpha(std::span<const double> y, RandomSource& rng, std::size_t m);

/// The Bartlett model as a generic fiducial model: observation w, parameter
/// alpha, Monte Carlo law the uniform n-vector.
FiducialModel make_gamma_shape_model(int n);

}  // namespace fid
