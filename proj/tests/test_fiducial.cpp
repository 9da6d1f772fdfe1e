#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fid/discrete.hpp"
#include "fid/errors.hpp"
#include "fid/fiducial.hpp"
#include "fid/sampling.hpp"
#include "fid/special.hpp"
#include "fid/stats.hpp"

using namespace fid;

namespace {

DigitizedLaw example_law() {
  return DigitizedLaw::from_weights(1.0, {{-1, 2}, {0, 5}, {1, 3}});
}

}  // namespace

TEST_CASE("simple-model round trip: solve(u, forward(u, theta)) == theta") {
  const FiducialModel model = make_location_normal_model(1.7);
  RandomSource rng(11, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> u = model.law.sample(rng);
    const double theta = 10.0 * (sample_uniform(rng) - 0.5);
    const double x = model.forward(u, theta);
    CHECK(*model.solve(u, x) == doctest::Approx(theta).epsilon(1e-9));
  }
}

TEST_CASE("sample_data: digitized support and precondition") {
  const DigitizedLaw law = example_law();
  const FiducialModel model = make_digitized_model(law);
  RandomSource rng(5, 0);
  const std::vector<double> xs = sample_data(model, 0.0, rng, 2000);
  for (double x : xs) {
    CHECK((x == -1.0 || x == 0.0 || x == 1.0));
  }
  CHECK_THROWS_AS(sample_data(model, 0.0, rng, 0), DomainError);
}

TEST_CASE("sample_fiducial: location model solves exactly to x - u") {
  const FiducialModel model = make_location_normal_model(1.0);
  RandomSource rng_draws(77, 1);
  std::vector<double> us(200);
  for (double& u : us) u = sample_std_normal(rng_draws);
  RandomSource rng(77, 1);  // same stream: the fiducial must see the same u's
  const FiducialSample sample = sample_fiducial(model, 3.25, rng, 200);
  REQUIRE(sample.draws.size() == 200);
  CHECK(sample.draw_count == 200);
  CHECK(sample.model_id == "location-normal");
  CHECK(sample.observation == 3.25);
  for (std::size_t i = 0; i < us.size(); ++i) {
    CHECK(sample.draws[i] == 3.25 - us[i]);
  }
}

TEST_CASE("sample_fiducial: NotSimple when the solver fails for some u") {
  FiducialModel broken = make_location_normal_model(1.0);
  broken.id = "broken";
  broken.solve = [](std::span<const double> u, double x) -> std::optional<double> {
    if (u[0] > 0.0) return std::nullopt;  // fails for about half of all draws
    return x - u[0];
  };
  RandomSource rng(3, 0);
  CHECK_THROWS_AS(sample_fiducial(broken, 0.0, rng, 100), NotSimple);
}

TEST_CASE("fiducial_cdf_monotone: continuous increasing model gives 1 - F") {
  const SamplingCdf scdf = make_location_normal_cdf(1.0);
  for (double theta : {-2.0, 0.0, 1.5}) {
    CHECK(fiducial_cdf_monotone(scdf, 0.3, theta, Monotonicity::Increasing) ==
          doctest::Approx(1.0 - std_normal_cdf(0.3 - theta)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(fiducial_cdf_monotone(scdf, 0.0, 0.0, Monotonicity::NonMonotone),
                  DomainError);
}

TEST_CASE("fiducial_cdf_monotone: digitized model at x=0 hits the enumerated values") {
  const DigitizedLaw law = example_law();
  const SamplingCdf scdf = make_digitized_sampling_cdf(law);
  // Independent oracle: enumerate P(U >= x - theta) over the integer weights
  // {-1:2, 0:5, 1:3}/10, dividing once at the end so the value is exact.
  const auto enumerated = [](double x, double theta) {
    const int ks[] = {-1, 0, 1};
    const long long ws[] = {2, 5, 3};
    long long acc = 0;
    for (int i = 0; i < 3; ++i) {
      if (static_cast<double>(ks[i]) >= x - theta) acc += ws[i];
    }
    return static_cast<double>(acc) / 10.0;
  };
  const double expected[] = {0.3, 0.8, 1.0};
  const double thetas[] = {-1.0, 0.0, 1.0};
  for (int i = 0; i < 3; ++i) {
    // The dedicated digitized op sums the pmf tail exactly (bit equality);
    // the generic 1 - F(x-|theta) route incurs one rounding in the final
    // subtraction.
    CHECK(digitized_fiducial_cdf(law, 0.0, thetas[i]) == enumerated(0.0, thetas[i]));
    CHECK(digitized_fiducial_cdf(law, 0.0, thetas[i]) == expected[i]);
    const double c = fiducial_cdf_monotone(scdf, 0.0, thetas[i], Monotonicity::Increasing);
    CHECK(c == doctest::Approx(expected[i]).epsilon(1e-14));
  }
}

TEST_CASE("fiducial_cdf_monotone: decreasing model gives F itself") {
  // x = u / theta with u ~ Exp(1): theta -> x strictly decreasing,
  // F(x|theta) = 1 - exp(-x*theta).
  const SamplingCdf scdf = continuous_sampling_cdf(
      [](double x, double theta) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x * theta); });
  for (double theta : {0.5, 1.0, 4.0}) {
    CHECK(fiducial_cdf_monotone(scdf, 1.2, theta, Monotonicity::Decreasing) ==
          scdf.evaluate(1.2, theta));
  }
}

TEST_CASE("fiducial_percentile: small-sample conventions") {
  FiducialSample s;
  s.draws = {3.0, 1.0, 2.0};
  CHECK(fiducial_percentile(s, 0.5) == doctest::Approx(2.0));
  CHECK(fiducial_percentile(s, 1e-9) == doctest::Approx(1.0));
  CHECK(fiducial_percentile(s, 1.0 - 1e-9) == doctest::Approx(3.0));
  CHECK(fiducial_percentile(s, 0.25) == doctest::Approx(1.5));
  FiducialSample empty;
  CHECK_THROWS_AS(fiducial_percentile(empty, 0.5), EmptySample);
  CHECK_THROWS_AS(fiducial_percentile(s, 0.0), DomainError);
  // Nondecreasing in p.
  double prev = fiducial_percentile(s, 0.01);
  for (double p = 0.05; p < 1.0; p += 0.05) {
    const double q = fiducial_percentile(s, p);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("fiducial_percentile: standard-normal draws, p=0.975 near 1.96") {
  const FiducialModel model = make_location_normal_model(1.0);
  RandomSource rng(123, 0);
  const FiducialSample sample = sample_fiducial(model, 0.0, rng, 100000);
  CHECK(std::fabs(fiducial_percentile(sample, 0.975) - 1.959964) < 0.03);
}

TEST_CASE("fisher_density_check: location-normal recovers the density") {
  const SamplingCdf scdf = make_location_normal_cdf(1.0);
  CHECK(std::fabs(fisher_density_check(scdf, 1.4, 1.4, 1e-4) - 0.398942) < 1e-5);
  for (double x : {-1.0, 0.0, 2.0}) {
    for (double theta = -3.0; theta <= 3.0; theta += 0.5) {
      CHECK(fisher_density_check(scdf, x, theta, 1e-4) >= 0.0);
    }
  }
}

TEST_CASE("fisher_density_check matches a KDE of fiducial draws (sup over a grid)") {
  const FiducialModel model = make_location_normal_model(1.0);
  const SamplingCdf scdf = make_location_normal_cdf(1.0);
  const double x = 0.7;
  RandomSource rng(2718, 0);
  const FiducialSample sample = sample_fiducial(model, x, rng, 1000000);
  const double h = 0.05;
  double sup = 0.0;
  for (double theta = x - 3.0; theta <= x + 3.0; theta += 0.2) {
    double kde = 0.0;
    for (double d : sample.draws) kde += std_normal_pdf((theta - d) / h);
    kde /= h * static_cast<double>(sample.draws.size());
    sup = std::max(sup, std::fabs(kde - fisher_density_check(scdf, x, theta, 1e-4)));
  }
  CHECK(sup < 0.02);
}

TEST_CASE("empirical fiducial CDF converges to the closed form") {
  const FiducialModel model = make_location_normal_model(1.0);
  const SamplingCdf scdf = make_location_normal_cdf(1.0);
  const double x = -0.4;
  RandomSource rng(31415, 2);
  FiducialSample sample = sample_fiducial(model, x, rng, 100000);
  std::sort(sample.draws.begin(), sample.draws.end());
  const double crit = 1.628 / std::sqrt(100000.0);  // one-sample KS at 1%
  double sup = 0.0;
  for (double theta = x - 3.0; theta <= x + 3.0; theta += 0.1) {
    const auto it = std::upper_bound(sample.draws.begin(), sample.draws.end(), theta);
    const double empirical =
        static_cast<double>(it - sample.draws.begin()) / sample.draws.size();
    sup = std::max(sup, std::fabs(empirical - fiducial_cdf_monotone(
                                                  scdf, x, theta, Monotonicity::Increasing)));
  }
  CHECK(sup <= 2.0 * crit);
}

TEST_CASE("monotone consistency: C(theta|x) nondecreasing in theta") {
  const SamplingCdf continuous = make_location_normal_cdf(1.0);
  const SamplingCdf discrete = make_digitized_sampling_cdf(example_law());
  for (const SamplingCdf* scdf : {&continuous, &discrete}) {
    double prev = 0.0;
    for (double theta = -4.0; theta <= 4.0; theta += 0.05) {
      const double c = fiducial_cdf_monotone(*scdf, 0.0, theta, Monotonicity::Increasing);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("forward map is strictly increasing in theta for sampled u") {
  const FiducialModel model = make_location_normal_model(2.0);
  RandomSource rng(9, 0);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> u = model.law.sample(rng);
    double prev = model.forward(u, -5.0);
    for (double theta = -4.5; theta <= 5.0; theta += 0.5) {
      const double x = model.forward(u, theta);
      CHECK(x > prev);
      prev = x;
    }
  }
}
