#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fid/correlation.hpp"
#include "fid/errors.hpp"
#include "fid/sampling.hpp"
#include "fid/stats.hpp"
#include "test_support.hpp"

using namespace fid;

TEST_CASE("solve_theta_corr: arithmetic, inverse identity, domain") {
  CHECK(solve_theta_corr(2.0, 1.0, 1.0, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(solve_theta_corr(2.0, 1.0, 0.0, 0.0) == 0.0);
  RandomSource rng(1, 0);
  for (int i = 0; i < 200; ++i) {
    const double u1 = 0.1 + 3.0 * sample_uniform(rng);
    const double u2 = 0.1 + 3.0 * sample_uniform(rng);
    const double u3 = sample_std_normal(rng);
    const double x = 4.0 * (sample_uniform(rng) - 0.5);
    const double theta = solve_theta_corr(u1, u2, u3, x);
    CHECK((theta * u1 + u3) / u2 == doctest::Approx(x).epsilon(1e-12));
  }
  CHECK_THROWS_AS(solve_theta_corr(0.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(solve_theta_corr(-1.0, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("r <-> x and theta <-> rho maps") {
  CHECK(r_to_x(0.0) == 0.0);
  CHECK(x_to_r(0.0) == 0.0);
  CHECK(theta_to_rho(0.0) == 0.0);
  CHECK(theta_to_rho(1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  for (double t = -5.0; t <= 5.0; t += 0.25) {
    CHECK(rho_to_theta(theta_to_rho(t)) == doctest::Approx(t).epsilon(1e-12));
    CHECK(x_to_r(r_to_x(theta_to_rho(t))) ==
          doctest::Approx(theta_to_rho(t)).epsilon(1e-12));
  }
  // Strictly increasing bijections.
  double prev = theta_to_rho(-6.0);
  for (double t = -5.75; t <= 6.0; t += 0.25) {
    const double rho = theta_to_rho(t);
    CHECK(rho > prev);
    CHECK(rho > -1.0);
    CHECK(rho < 1.0);
    prev = rho;
  }
  CHECK_THROWS_AS(r_to_x(1.0), DomainError);
  CHECK_THROWS_AS(rho_to_theta(-1.0), DomainError);
}

TEST_CASE("fiducial_rho: symmetry at r_obs=0 and range") {
  RandomSource rng(77, 0);
  const FiducialSample sample = fiducial_rho(0.0, 7, rng, 100000);
  for (double rho : sample.draws) {
    CHECK(rho > -1.0);
    CHECK(rho < 1.0);
  }
  std::vector<double> sorted = sample.draws;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::fabs(sorted[sorted.size() / 2]) < 0.02);
  CHECK_THROWS_AS(fiducial_rho(0.0, 2, rng, 10), DomainError);
}

TEST_CASE("sample_empirical_corr: range, near-unbiasedness at rho=0") {
  RandomSource rng(5, 1);
  const std::vector<double> rs = sample_empirical_corr(0.0, 20, rng, 100000);
  double sum = 0.0;
  for (double r : rs) {
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    sum += r;
  }
  CHECK(std::fabs(sum / static_cast<double>(rs.size())) < 0.01);
}

TEST_CASE("sample_empirical_corr: two seeds agree at rho=0.9, n=50") {
  RandomSource rng_a(11, 0);
  RandomSource rng_b(12, 0);
  const std::vector<double> a = sample_empirical_corr(0.9, 50, rng_a, 50000);
  const std::vector<double> b = sample_empirical_corr(0.9, 50, rng_b, 50000);
  const double mean_a = mean(a);
  const double mean_b = mean(b);
  // Same small-sample bias in both; they must agree within MC error.
  CHECK(std::fabs(mean_a - mean_b) < 0.002);
  CHECK(std::fabs(mean_a - 0.9) < 0.01);
}

TEST_CASE("structural sampling law equals the empirical correlation law") {
  const FiducialModel model = make_correlation_model(5);
  RandomSource rng_struct(400, 0);
  RandomSource rng_emp(400, 1);
  const std::vector<double> structural = sample_data(model, 0.0, rng_struct, 30000);
  const std::vector<double> empirical = sample_empirical_corr(0.0, 5, rng_emp, 30000);
  const double d = ks_distance(structural, empirical);
  CHECK(d < ks_two_sample_threshold(30000, 30000, 0.01));
}

TEST_CASE("fiducial percentiles match the CDF-inversion oracle (desk scale)") {
  const double r_obs = 0.5;
  const int n = 10;
  RandomSource rng(2025, 0);
  const FiducialSample sample = fiducial_rho(r_obs, n, rng, 30000);
  // alpha = F(r | rho_{1-alpha}): the 97.5% fiducial percentile solves
  // F = 0.025 and the 2.5% percentile solves F = 0.975.
  const double lo_oracle = fid_test::cdf_inversion_rho_percentile(r_obs, n, 0.975, 30000, 99);
  const double hi_oracle = fid_test::cdf_inversion_rho_percentile(r_obs, n, 0.025, 30000, 99);
  CHECK(std::fabs(fiducial_percentile(sample, 0.025) - lo_oracle) < 0.02);
  CHECK(std::fabs(fiducial_percentile(sample, 0.975) - hi_oracle) < 0.02);
}

TEST_CASE("theta -> forward(u, theta) strictly increasing for sampled u") {
  const FiducialModel model = make_correlation_model(8);
  RandomSource rng(31, 0);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> u = model.law.sample(rng);
    double prev = model.forward(u, -0.99);
    for (double rho = -0.9; rho <= 0.99; rho += 0.07) {
      const double r = model.forward(u, rho);
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_CASE("round trip through the generic model interface") {
  const FiducialModel model = make_correlation_model(6);
  RandomSource rng(8, 0);
  for (int i = 0; i < 500; ++i) {
    const std::vector<double> u = model.law.sample(rng);
    const double rho = 1.8 * (sample_uniform(rng) - 0.5);
    const double r = model.forward(u, rho);
    CHECK(*model.solve(u, r) == doctest::Approx(rho).epsilon(1e-9));
  }
}
