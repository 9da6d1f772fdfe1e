#pragma once

#include <cstddef>
#include <vector>

#include "fid/fiducial.hpp"
#include "fid/random.hpp"

namespace fid {

// Bivariate-normal correlation setup: n is the number of observed pairs.
// n >= 3 keeps both chi-square degrees of freedom (n-1, n-2) at >= 1.
struct CorrelationModel {
  int n;
};

/// Algebraic solution theta = (x*u2 - u3)/u1 of the structural equation
/// x = (theta*u1 + u3)/u2. Throws DomainError if u1 <= 0.
double solve_theta_corr(double u1, double u2, double u3, double x);

/// x = r/sqrt(1-r^2), the unbounded coordinate of an observed correlation.
/// Throws DomainError for |r| >= 1.
double r_to_x(double r);

/// Inverse of r_to_x.
double x_to_r(double x);

/// rho = theta/sqrt(1+theta^2), mapping the unbounded parameter into (-1,1).
double theta_to_rho(double theta);

/// Inverse of theta_to_rho. Throws DomainError for |rho| >= 1.
double rho_to_theta(double rho);

/// Fiducial sample of the correlation coefficient rho given an observed
/// empirical correlation r_obs from n pairs.
FiducialSample fiducial_rho(double r_obs, int n, RandomSource& rng, std::size_t m);

/// m empirical correlation coefficients, each computed from n fresh bivariate
/// standard-normal pairs with correlation rho (Cholesky construction). This
/// is the direct route to the sampling law of r, independent of the
/// structural model.
std::vector<double> sample_empirical_corr(double rho, int n, RandomSource& rng,
                                          std::size_t m);

/// The structural model expressed directly in (r, rho) coordinates: a simple,
/// strictly increasing fiducial model for the correlation coefficient.
FiducialModel make_correlation_model(int n);

}  // namespace fid
