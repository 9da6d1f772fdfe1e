#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fid/discrete.hpp"
#include "fid/errors.hpp"
#include "fid/quadrature.hpp"
#include "fid/sampling.hpp"
#include "fid/special.hpp"
#include "fid/stats.hpp"

using namespace fid;

namespace {

DigitizedLaw example_law() {
  return DigitizedLaw::from_weights(1.0, {{-1, 2}, {0, 5}, {1, 3}});
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("DigitizedLaw: validation") {
  CHECK_THROWS_AS(DigitizedLaw::from_weights(0.0, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(DigitizedLaw::from_weights(1.0, {}), DomainError);
  CHECK_THROWS_AS(DigitizedLaw::from_weights(1.0, {{0, -1}, {1, 2}}), DomainError);
  CHECK_THROWS_AS(DigitizedLaw::from_probabilities(1.0, {{0, 0.5}, {1, 0.4}}), DomainError);
  CHECK_NOTHROW(DigitizedLaw::from_probabilities(0.5, {{0, 0.5}, {1, 0.5}}));
}

TEST_CASE("digitized CDF: right continuity and steps exactly at x - support") {
  const DigitizedLaw law = example_law();
  const double x = 0.25;
  // Steps exactly at theta = x - k*d for k in {-1, 0, 1}.
  for (int k : {-1, 0, 1}) {
    const double step = x - static_cast<double>(k);
    const double at = digitized_fiducial_cdf(law, x, step);
    const double just_above = digitized_fiducial_cdf(law, x, step + 1e-9);
    const double just_below = digitized_fiducial_cdf(law, x, step - 1e-9);
    CHECK(at == just_above);  // right continuous
    CHECK(at > just_below);   // a genuine jump
  }
  // Flat between steps.
  CHECK(digitized_fiducial_cdf(law, x, x - 0.5) == digitized_fiducial_cdf(law, x, x - 0.01));
  // Below the lowest step the CDF is zero.
  CHECK(digitized_fiducial_cdf(law, x, x - 1.0 - 1e-9) == 0.0);
  CHECK(digitized_fiducial_cdf(law, x, x - 5.0) == 0.0);
  // At and above the highest step it is one.
  CHECK(digitized_fiducial_cdf(law, x, x + 1.0) == 1.0);
}

TEST_CASE("digitized fiducial mean: exact pmf arithmetic") {
  const DigitizedLaw symmetric = DigitizedLaw::from_weights(1.0, {{-1, 1}, {0, 2}, {1, 1}});
  CHECK(digitized_fiducial_mean(symmetric, 2.5) == doctest::Approx(2.5).epsilon(1e-15));
  const DigitizedLaw law = example_law();  // E[U] = 0.1
  CHECK(digitized_fiducial_mean(law, 0.0) == doctest::Approx(-0.1).epsilon(1e-12));
  // Mode-based estimate x - argmax pmf = 0 differs from the fiducial mean.
  const double mode_estimate = 0.0 - 0.0;
  CHECK(digitized_fiducial_mean(law, 0.0) != mode_estimate);
}

TEST_CASE("right-skewed auxiliary law gives a left-skewed fiducial") {
  const DigitizedLaw law = DigitizedLaw::from_weights(1.0, {{0, 6}, {1, 25}, {4, 15}, {9, 4}});
  CHECK(law.third_central_moment() > 0.0);
  // theta = x - U flips the sign of the third central moment.
  double mean_theta = 0.0;
  for (const auto& [k, p] : law.pmf()) mean_theta += (5.0 - static_cast<double>(k)) * p;
  double third = 0.0;
  for (const auto& [k, p] : law.pmf()) {
    const double dev = (5.0 - static_cast<double>(k)) - mean_theta;
    third += dev * dev * dev * p;
  }
  CHECK(third < 0.0);
  CHECK(third == doctest::Approx(-law.third_central_moment()).epsilon(1e-12));
}

TEST_CASE("digitized CDF matches the empirical CDF of fiducial draws (DKW at 1e6)") {
  const DigitizedLaw law = example_law();
  const FiducialModel model = make_digitized_model(law);
  RandomSource rng(314, 0);
  FiducialSample sample = sample_fiducial(model, 0.0, rng, 1000000);
  std::sort(sample.draws.begin(), sample.draws.end());
  for (double theta : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5}) {
    const auto it = std::upper_bound(sample.draws.begin(), sample.draws.end(), theta);
    const double empirical =
        static_cast<double>(it - sample.draws.begin()) / sample.draws.size();
    CHECK(std::fabs(empirical - digitized_fiducial_cdf(law, 0.0, theta)) <= 0.004);
  }
}

TEST_CASE("truncated_pointmass: closed form and MC oracle") {
  const TruncatedMeanModel model{2.0, 4, 1.0};  // sd of the mean = 1.0
  CHECK(truncated_pointmass(model, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(truncated_pointmass(model, -40.0) == 0.0);
  // x_bar = mu_max + sd: mass = Phi(1); MC frequency of x_bar - z >= mu_max
  // over 1e6 draws, 3 standard errors ~ 0.0011.
  const double p = truncated_pointmass(model, 2.0);
  CHECK(p == doctest::Approx(std_normal_cdf(1.0)).epsilon(1e-12));
  RandomSource rng(555, 0);
  std::size_t hits = 0;
  const std::size_t n = 1000000;
  for (std::size_t i = 0; i < n; ++i) {
    if (2.0 - sample_std_normal(rng) >= 1.0) ++hits;
  }
  CHECK(std::fabs(static_cast<double>(hits) / n - p) < 0.0011);
}

TEST_CASE("truncated candidate A: support and far-from-bound behaviour") {
  const TruncatedMeanModel model{1.0, 4, 10.0};
  RandomSource rng(808, 0);
  const FiducialSample sample = truncated_fiducial_a(model, 0.0, rng, 100000);
  double sum = 0.0;
  for (double mu : sample.draws) {
    CHECK(mu < model.mu_max);
    sum += mu;
  }
  // Truncation inactive: mean ~ x_bar with se = 0.5/sqrt(1e5).
  CHECK(std::fabs(sum / sample.draws.size()) < 0.006);
}

TEST_CASE("truncated candidate A at x_bar = mu_max: mean matches the quadrature oracle") {
  const TruncatedMeanModel model{1.5, 9, 2.0};  // sd = 0.5
  RandomSource rng(909, 0);
  const FiducialSample sample = truncated_fiducial_a(model, 2.0, rng, 100000);
  const double sd = 1.5 / 3.0;
  // Oracle: mean of the truncated density by quadrature (the truncation is
  // the upper integration limit, so the integrand itself stays smooth).
  const auto density = [sd](double mu) { return std_normal_pdf((mu - 2.0) / sd) / sd; };
  const double mass = integrate(density, -kInf, 2.0, 1e-10);
  const double oracle_mean =
      integrate([&](double mu) { return mu * density(mu); }, -kInf, 2.0, 1e-10) / mass;
  CHECK(oracle_mean == doctest::Approx(2.0 - sd * std::sqrt(2.0 / 3.14159265358979))
                           .epsilon(1e-6));
  CHECK(std::fabs(mean(sample.draws) - oracle_mean) < 0.005);
}

TEST_CASE("truncated candidate A: rejection agrees with the inverse-CDF route (KS)") {
  const TruncatedMeanModel model{1.0, 1, 0.5};
  RandomSource rng_rej(13, 0);
  RandomSource rng_inv(13, 1);
  const FiducialSample rej = truncated_fiducial_a(model, 0.0, rng_rej, 100000);
  const FiducialSample inv = truncated_fiducial_a_inverse(model, 0.0, rng_inv, 100000);
  CHECK(ks_distance(rej.draws, inv.draws) < 0.012);
}

TEST_CASE("truncated candidate A: stall detection and fallback") {
  const TruncatedMeanModel model{1.0, 100, 0.0};  // sd = 0.1
  RandomSource rng(21, 0);
  // x_bar at mu_max + 5.5 sd: acceptance ~ 1.9e-8 < 1e-6.
  CHECK_THROWS_AS(truncated_fiducial_a(model, 0.55, rng, 100), RejectionStall);
  const FiducialSample fallback = truncated_fiducial_a_inverse(model, 0.55, rng, 1000);
  for (double mu : fallback.draws) CHECK(mu < 0.0);
}

TEST_CASE("truncated candidate B: mixed distribution structure") {
  const TruncatedMeanModel model{2.0, 4, 1.0};  // sd = 1
  SUBCASE("total mass is one by quadrature plus the atom") {
    for (double x_bar : {-2.0, 1.0, 3.0}) {
      const MixedDistribution b = truncated_fiducial_b(model, x_bar);
      CHECK(std::fabs(b.total_mass() - 1.0) < 1e-8);
    }
  }
  SUBCASE("far below the bound the atom vanishes and B is the plain fiducial") {
    const MixedDistribution b = truncated_fiducial_b(model, -6.0);
    CHECK(b.point_masses[0].second < 1e-10);
    CHECK(b.density(-6.0) == doctest::Approx(std_normal_pdf(0.0)).epsilon(1e-12));
  }
  SUBCASE("CDF is Phi(sqrt(n)(t - x_bar)/sigma) below the bound, 1 at the bound") {
    const double x_bar = 0.6;
    const MixedDistribution b = truncated_fiducial_b(model, x_bar);
    for (double t : {-1.5, 0.0, 0.6, 0.99}) {
      CHECK(std::fabs(b.cdf(t) - std_normal_cdf(t - x_bar)) < 1e-7);
    }
    CHECK(std::fabs(b.cdf(1.0) - 1.0) < 1e-7);
  }
}

TEST_CASE("candidates A and B differ: TV bounded below via the atom") {
  const TruncatedMeanModel model{2.0, 4, 1.0};  // sd = 1, x_bar at the bound
  const double x_bar = 1.0;
  const MixedDistribution b = truncated_fiducial_b(model, x_bar);
  const double atom = b.point_masses[0].second;
  CHECK(atom == doctest::Approx(0.5).epsilon(1e-12));
  // Density part of A (normalized truncation) vs density part of B.
  const double accept = 1.0 - atom;
  const auto density_a = [&](double mu) { return b.density(mu) / accept; };
  const double tv =
      0.5 * (integrate([&](double mu) { return std::fabs(density_a(mu) - b.density(mu)); },
                       -kInf, 1.0, 1e-10) +
             atom);
  CHECK(tv >= 0.25);
  CHECK(tv >= atom / 2.0);
}
