#pragma once

namespace fid {

/// Standard normal density.
double std_normal_pdf(double z);

/// Standard normal CDF. Monotone, saturates to 0/1 in the extreme tails.
double std_normal_cdf(double z);

/// Inverse of std_normal_cdf on (0,1).
double std_normal_inv_cdf(double p);

/// Regularized lower incomplete gamma P(shape, x), i.e. the CDF at x of a
/// gamma variable with the given shape and unit scale.
/// Throws DomainError for x < 0 or shape <= 0.
double gamma_cdf(double x, double shape);

/// Inverse of gamma_cdf in x: gamma_cdf(result, shape) == u to within tol.
/// Throws DomainError for u outside (0,1) or shape <= 0.
double gamma_inv_cdf(double u, double shape, double tol = 1e-12);

/// Log-density of the unit-scale gamma distribution.
double gamma_log_pdf(double x, double shape);
double gamma_pdf(double x, double shape);

/// log I0(x), the log modified Bessel function of order zero.
double log_bessel_i0(double x);

/// Von Mises density exp(kappa*cos(angle - mean_direction)) / (2*pi*I0(kappa)).
/// Throws DomainError for kappa < 0. kappa == 0 is the uniform circle law.
double von_mises_density(double angle, double mean_direction, double kappa);

namespace detail {

// The two independent evaluation routes behind gamma_cdf, exposed so tests
// can cross-check them against each other.
double gamma_p_series(double shape, double x);
double gamma_p_contfrac(double shape, double x);

}  // namespace detail

}  // namespace fid
