#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fid/errors.hpp"
#include "fid/gamma_shape.hpp"
#include "fid/sampling.hpp"

using namespace fid;

TEST_CASE("bartlett_statistic: arithmetic cases and scale invariance") {
  CHECK(bartlett_statistic(std::vector<double>{3.0, 3.0, 3.0}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bartlett_statistic(std::vector<double>{1.0, 4.0}) ==
        doctest::Approx(0.8).epsilon(1e-14));
  const std::vector<double> y{0.2, 1.7, 3.1, 0.9};
  std::vector<double> scaled = y;
  for (double& v : scaled) v *= 7.0;
  CHECK(std::fabs(bartlett_statistic(y) - bartlett_statistic(scaled)) < 1e-14);
  CHECK_THROWS_AS(bartlett_statistic(std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(bartlett_statistic(std::vector<double>{1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(bartlett_statistic(std::vector<double>{1.0, 0.0}), DomainError);
}

TEST_CASE("bartlett_map: strictly increasing in alpha, degenerate u rejected") {
  RandomSource rng(42, 0);
  std::vector<double> u(5);
  for (int trial = 0; trial < 50; ++trial) {
    for (double& ui : u) ui = sample_uniform(rng);
    CHECK(bartlett_map(u, 2.0) > bartlett_map(u, 1.0));
    double prev = bartlett_map(u, 0.05);
    for (double a = 0.1; a < 60.0; a *= 1.7) {
      const double w = bartlett_map(u, a);
      CHECK(w > prev);
      CHECK(w > 0.0);
      CHECK(w <= 1.0);
      prev = w;
    }
  }
  const std::vector<double> equal_u{0.4, 0.4, 0.4};
  CHECK_THROWS_AS(bartlett_map(equal_u, 1.0), DomainError);
  CHECK_THROWS_AS(bartlett_map(u, 0.0), DomainError);
}

TEST_CASE("bartlett_map: w -> 1 as alpha grows (quantile concentration)") {
  const std::vector<double> u{0.11, 0.36, 0.58, 0.74, 0.93};
  CHECK(bartlett_map(u, 1e4) > 0.99);
}

TEST_CASE("solve_alpha: round trip, error paths, monotone output") {
  const std::vector<double> u{0.13, 0.42, 0.55, 0.71, 0.9};
  const double w = bartlett_map(u, 2.5);
  CHECK(solve_alpha(u, w) == doctest::Approx(2.5).epsilon(1e-6));
  CHECK_THROWS_AS(solve_alpha(u, 1.0), DomainError);
  CHECK_THROWS_AS(solve_alpha(u, 0.0), DomainError);
  CHECK(solve_alpha(u, 0.9) > solve_alpha(u, 0.5));
}

TEST_CASE("solve_alpha round trips across alpha in [0.2, 50]") {
  RandomSource rng(7, 0);
  std::vector<double> u(5);
  for (int trial = 0; trial < 1000; ++trial) {
    for (double& ui : u) ui = sample_uniform(rng);
    const double alpha0 = 0.2 + 49.8 * sample_uniform(rng);
    const double w = bartlett_map(u, alpha0);
    if (!(w > 0.0 && w < 1.0)) continue;
    const double back = solve_alpha(u, w);
    CHECK(std::fabs(back - alpha0) < 1e-6 * std::max(1.0, alpha0));
  }
}

TEST_CASE("fiducial_alpha: positivity, w-sufficiency, scale invariance") {
  const std::vector<double> y{1.2, 0.4, 2.7, 1.9, 0.8};
  RandomSource rng_a(99, 0);
  const FiducialSample a = fiducial_alpha(y, rng_a, 500);
  for (double alpha : a.draws) CHECK(alpha > 0.0);

  // Same seed, scaled data: the statistic is scale-free, so the draws are
  // identical draw-by-draw.
  std::vector<double> scaled = y;
  for (double& v : scaled) v *= 7.0;
  RandomSource rng_b(99, 0);
  const FiducialSample b = fiducial_alpha(scaled, rng_b, 500);
  REQUIRE(a.draws.size() == b.draws.size());
  for (std::size_t i = 0; i < a.draws.size(); ++i) {
    CHECK(a.draws[i] == doctest::Approx(b.draws[i]).epsilon(1e-12));
  }

  // Draws depend on the data only through w: any data with the same Bartlett
  // statistic and seed gives the same sample.
  RandomSource rng_c(99, 0);
  const FiducialModel model = make_gamma_shape_model(static_cast<int>(y.size()));
  const FiducialSample c = sample_fiducial(model, bartlett_statistic(y), rng_c, 500);
  for (std::size_t i = 0; i < a.draws.size(); ++i) {
    CHECK(a.draws[i] == doctest::Approx(c.draws[i]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(fiducial_alpha(std::vector<double>{2.0, 2.0, 2.0}, rng_a, 10),
                  DomainError);
}
