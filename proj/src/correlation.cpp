#include "fid/correlation.hpp"

#include <cmath>
#include <string>

#include "fid/errors.hpp"
#include "fid/sampling.hpp"

namespace fid {

namespace {

void require_n(int n) {
  if (n < 3) throw DomainError("correlation model: need n >= 3, got " + std::to_string(n));
}

// Monte Carlo law of the structural model: chi-distributed scale factors
// (square roots of chi-square draws) and an independent standard normal.
void fill_structural_u(int n, RandomSource& rng, std::vector<double>& u) {
  u.resize(3);
  u[0] = std::sqrt(sample_chi2(n - 1, rng));
  u[1] = std::sqrt(sample_chi2(n - 2, rng));
  u[2] = sample_std_normal(rng);
}

}  // namespace

double solve_theta_corr(double u1, double u2, double u3, double x) {
  if (!(u1 > 0.0)) throw DomainError("solve_theta_corr: u1 must be positive");
  return (x * u2 - u3) / u1;
}

double r_to_x(double r) {
  if (!(r > -1.0 && r < 1.0)) {
    throw DomainError("r_to_x: correlation must lie in (-1,1), got " + std::to_string(r));
  }
  return r / std::sqrt(1.0 - r * r);
}

double x_to_r(double x) { return x / std::sqrt(1.0 + x * x); }

double theta_to_rho(double theta) { return theta / std::sqrt(1.0 + theta * theta); }

double rho_to_theta(double rho) {
  if (!(rho > -1.0 && rho < 1.0)) {
    throw DomainError("rho_to_theta: rho must lie in (-1,1), got " + std::to_string(rho));
  }
  return rho / std::sqrt(1.0 - rho * rho);
}

FiducialSample fiducial_rho(double r_obs, int n, RandomSource& rng, std::size_t m) {
  require_n(n);
  if (m == 0) throw DomainError("fiducial_rho: need m >= 1");
  const double x = r_to_x(r_obs);
  FiducialSample sample;
  sample.model_id = "corr";
  sample.observation = r_obs;
  sample.seed = rng.seed();
  sample.draw_count = m;
  sample.draws.reserve(m);
  std::vector<double> u;
  for (std::size_t j = 0; j < m; ++j) {
    fill_structural_u(n, rng, u);
    sample.draws.push_back(theta_to_rho(solve_theta_corr(u[0], u[1], u[2], x)));
  }
  return sample;
}

std::vector<double> sample_empirical_corr(double rho, int n, RandomSource& rng,
                                          std::size_t m) {
  require_n(n);
  if (m == 0) throw DomainError("sample_empirical_corr: need m >= 1");
  if (!(rho > -1.0 && rho < 1.0)) {
    throw DomainError("sample_empirical_corr: rho must lie in (-1,1)");
  }
  const double comp = std::sqrt(1.0 - rho * rho);
  std::vector<double> out;
  out.reserve(m);
  for (std::size_t rep = 0; rep < m; ++rep) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = sample_std_normal(rng);
      const double w = sample_std_normal(rng);
      const double xv = z;
      const double yv = rho * z + comp * w;
      sx += xv;
      sy += yv;
      sxx += xv * xv;
      syy += yv * yv;
      sxy += xv * yv;
    }
    const double nn = static_cast<double>(n);
    const double cxx = sxx - sx * sx / nn;
    const double cyy = syy - sy * sy / nn;
    const double cxy = sxy - sx * sy / nn;
    out.push_back(cxy / std::sqrt(cxx * cyy));
  }
  return out;
}

FiducialModel make_correlation_model(int n) {
  require_n(n);
  FiducialModel model;
  model.id = "corr";
  model.law = {"chi(n-1),chi(n-2),normal", 3,
               [n](RandomSource& rng, std::vector<double>& u) { fill_structural_u(n, rng, u); }};
  model.forward = [](std::span<const double> u, double rho) {
    const double theta = rho_to_theta(rho);
    return x_to_r((theta * u[0] + u[2]) / u[1]);
  };
  model.solve = [](std::span<const double> u, double r) {
    return std::optional<double>(theta_to_rho(solve_theta_corr(u[0], u[1], u[2], r_to_x(r))));
  };
  model.direction = Monotonicity::Increasing;
  model.parameter_space = {-1.0, 1.0};
  return model;
}

}  // namespace fid
