#pragma once

// Shared test-side oracles. These deliberately avoid the code paths they
// check: the correlation oracle below reaches the fiducial percentile through
// the sampling CDF of the empirical correlation coefficient (direct bivariate
// simulation + root solve), never through the structural solver.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fid/correlation.hpp"
#include "fid/random.hpp"

namespace fid_test {

// Fraction of simulated empirical correlations (at given rho) that fall at or
// below r_obs: a Monte Carlo estimate of F(r_obs | rho). Common random
// numbers: the same seed for every rho keeps the estimate monotone enough in
// rho for bisection.
inline double mc_corr_cdf(double r_obs, double rho, int n, std::size_t m,
                          std::uint64_t seed) {
  fid::RandomSource rng(seed, 4242);
  const std::vector<double> rs = fid::sample_empirical_corr(rho, n, rng, m);
  std::size_t count = 0;
  for (double r : rs) {
    if (r <= r_obs) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(m);
}

// The (1-alpha)-percentile of the fiducial of rho obtained by CDF inversion:
// the value rho_{1-alpha} solving alpha = F(r_obs | rho), found by bisection
// on the simulation-estimated sampling CDF.
inline double cdf_inversion_rho_percentile(double r_obs, int n, double alpha,
                                           std::size_t m_per_eval, std::uint64_t seed) {
  double lo = -0.9999;  // F ~ 1 here (rho far below the data)
  double hi = 0.9999;   // F ~ 0 here
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double F = mc_corr_cdf(r_obs, mid, n, m_per_eval, seed);
    (F > alpha ? lo : hi) = mid;
    if (hi - lo < 1e-4) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fid_test
