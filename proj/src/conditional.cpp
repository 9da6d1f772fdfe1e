#include "fid/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fid/errors.hpp"
#include "fid/quadrature.hpp"
#include "fid/sampling.hpp"
#include "fid/special.hpp"

namespace fid {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
}  // namespace

FiducialSample sample_conditional(const ConditionalFiducialModel& model, double x,
                                  RandomSource& rng, std::size_t m,
                                  std::size_t max_attempts_per_draw) {
  if (model.kind != ConditionKind::PositiveProbabilitySet) {
    throw DomainError(
        "sample_conditional: only PositiveProbabilitySet conditions are sampled by "
        "rejection; use the dedicated closed-form operations otherwise");
  }
  if (m == 0) throw DomainError("sample_conditional: need m >= 1");
  FiducialSample sample;
  sample.model_id = model.base.id + "|condition";
  sample.observation = x;
  sample.seed = rng.seed();
  sample.draw_count = m;
  sample.draws.reserve(m);
  std::vector<double> u;
  std::size_t rejected_streak = 0;
  while (sample.draws.size() < m) {
    model.base.law.fill(rng, u);
    const std::optional<double> theta = model.base.solve(u, x);
    if (theta && model.condition(*theta) == model.target) {
      sample.draws.push_back(*theta);
      rejected_streak = 0;
    } else if (++rejected_streak >= max_attempts_per_draw) {
      throw RejectionStall("sample_conditional: " + std::to_string(max_attempts_per_draw) +
                           " consecutive proposals rejected");
    }
  }
  return sample;
}

double NormalLaw::density(double t) const {
  const double sd = std::sqrt(variance);
  return std_normal_pdf((t - mean) / sd) / sd;
}

double NormalLaw::cdf(double t) const {
  return std_normal_cdf((t - mean) / std::sqrt(variance));
}

NormalLaw line_fiducial_difference(double x1, double x2) {
  // Theta ~ N(x, I2) given theta1 - theta2 = 0: the sum and difference
  // coordinates are independent, so the conditional along the line is
  // N((x1+x2)/2, 1/2) in mu = theta1.
  return {0.5 * (x1 + x2), 0.5};
}

double LineRatioFiducial::unnormalized(double mu) const {
  return std::fabs(mu) * std_normal_pdf(mu - x1_) * std_normal_pdf(mu - x2_);
}

LineRatioFiducial::LineRatioFiducial(double x1, double x2, double tol) : x1_(x1), x2_(x2) {
  norm_ = integrate([this](double mu) { return unnormalized(mu); },
                    -std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(), tol);
  if (!(norm_ > 0.0) || !std::isfinite(norm_)) {
    throw NonFiniteNormalization("LineRatioFiducial: normalization failed");
  }
}

double LineRatioFiducial::density(double mu) const { return unnormalized(mu) / norm_; }

double LineRatioFiducial::cdf(double t) const {
  return integrate([this](double mu) { return density(mu); },
                   -std::numeric_limits<double>::infinity(), t, 1e-10);
}

double line_fiducial_ratio_density(double mu, double x1, double x2) {
  return LineRatioFiducial(x1, x2).density(mu);
}

double VonMisesLaw::density(double angle) const {
  return von_mises_density(angle, mean_direction, kappa);
}

double VonMisesLaw::sample(RandomSource& rng) const {
  if (kappa == 0.0) {
    return sample_uniform(rng) * kTwoPi - kPi;
  }
  // Best-Fisher wrapped-Cauchy envelope.
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double z = std::cos(kPi * sample_uniform(rng));
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = sample_uniform(rng);
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double delta = sample_uniform(rng) < 0.5 ? -std::acos(f) : std::acos(f);
      double angle = mean_direction + delta;
      if (angle > kPi) angle -= kTwoPi;
      if (angle <= -kPi) angle += kTwoPi;
      return angle;
    }
  }
}

VonMisesLaw circle_fiducial(double x1, double x2, double R) {
  if (!(R > 0.0)) throw DomainError("circle_fiducial: R must be positive");
  const double a = std::hypot(x1, x2);
  if (a == 0.0) return {0.0, 0.0};
  return {std::atan2(x2, x1), a * R};
}

double Family::dcdf(double x, double alpha) const {
  if (!(alpha > alpha_lo && alpha < alpha_hi)) {
    throw DomainError("Family::dcdf: alpha outside the open parameter range of " + name);
  }
  if (dcdf_dalpha) return dcdf_dalpha(x, alpha);
  double h = std::max(1e-5, 1e-5 * std::fabs(alpha));
  if (alpha - h <= alpha_lo) h = 0.5 * (alpha - alpha_lo);
  if (alpha + h >= alpha_hi) h = std::min(h, 0.5 * (alpha_hi - alpha));
  return (cdf(x, alpha + h) - cdf(x, alpha - h)) / (2.0 * h);
}

double Family::density(double x, double alpha) const {
  if (pdf) return pdf(x, alpha);
  const double h = std::max(1e-6, 1e-6 * std::fabs(x));
  return (cdf(x + h, alpha) - cdf(x - h, alpha)) / (2.0 * h);
}

FamilyRegistry::FamilyRegistry() {
  const double inf = std::numeric_limits<double>::infinity();
  add({"location-normal",
       [](double x, double alpha) { return std_normal_cdf(x - alpha); },
       [](double x, double alpha) { return std_normal_pdf(x - alpha); },
       [](double x, double alpha) { return -std_normal_pdf(x - alpha); },
       -inf, inf});
  add({"scale-normal",
       [](double x, double sigma) { return std_normal_cdf(x / sigma); },
       [](double x, double sigma) { return std_normal_pdf(x / sigma) / sigma; },
       [](double x, double sigma) { return -std_normal_pdf(x / sigma) * x / (sigma * sigma); },
       0.0, inf});
  add({"gamma-shape",
       [](double x, double alpha) { return gamma_cdf(x, alpha); },
       [](double x, double alpha) { return gamma_pdf(x, alpha); },
       nullptr,  // dF/dalpha by finite differences
       0.0, inf});
}

FamilyRegistry& FamilyRegistry::global() {
  static FamilyRegistry registry;
  return registry;
}

void FamilyRegistry::add(Family family) {
  for (auto& existing : families_) {
    if (existing.name == family.name) {
      existing = std::move(family);
      return;
    }
  }
  families_.push_back(std::move(family));
}

const Family& FamilyRegistry::get(std::string_view name) const {
  for (const auto& family : families_) {
    if (family.name == name) return family;
  }
  throw DomainError("FamilyRegistry: unknown family '" + std::string(name) + "'");
}

namespace {

double normalize_over_range(const std::function<double(double)>& f, double lo, double hi,
                            double tol, const char* what) {
  const double norm = integrate(f, lo, hi, tol);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NonFiniteNormalization(std::string(what) + ": normalization integral is " +
                                 std::to_string(norm));
  }
  return norm;
}

}  // namespace

GtDensity::GtDensity(const Family& family, std::vector<double> data, ConditionKind kind,
                     double tol)
    : family_(&family), data_(std::move(data)), kind_(kind) {
  if (data_.empty()) throw DomainError("GtDensity: need n >= 1");
  if (kind != ConditionKind::Ratio && kind != ConditionKind::Difference) {
    throw DomainError("GtDensity: condition kind must be Ratio or Difference");
  }
  norm_ = normalize_over_range([this](double a) { return unnormalized(a); },
                               family.alpha_lo, family.alpha_hi, tol, "GtDensity");
}

double GtDensity::unnormalized(double alpha) const {
  // The parameter range is open; the density vanishes at and beyond it.
  if (!(alpha > family_->alpha_lo && alpha < family_->alpha_hi)) return 0.0;
  double value = 1.0;
  if (kind_ == ConditionKind::Ratio && data_.size() > 1) {
    value = std::pow(std::fabs(alpha), static_cast<double>(data_.size()) - 1.0);
  }
  for (double x : data_) value *= std::fabs(family_->dcdf(x, alpha));
  return value;
}

double GtDensity::operator()(double alpha) const { return unnormalized(alpha) / norm_; }

double GtDensity::cdf(double t) const {
  return integrate([this](double a) { return (*this)(a); }, family_->alpha_lo, t, 1e-9);
}

double gt_density(const Family& family, std::span<const double> data, ConditionKind kind,
                  double alpha) {
  return GtDensity(family, {data.begin(), data.end()}, kind)(alpha);
}

HannigDensity::HannigDensity(const Family& family, std::vector<double> data, double tol)
    : family_(&family), data_(std::move(data)) {
  if (data_.empty()) throw DomainError("HannigDensity: need n >= 1");
  norm_ = normalize_over_range([this](double a) { return unnormalized(a); },
                               family.alpha_lo, family.alpha_hi, tol, "HannigDensity");
}

double HannigDensity::unnormalized(double alpha) const {
  if (!(alpha > family_->alpha_lo && alpha < family_->alpha_hi)) return 0.0;
  const std::size_t n = data_.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double term = std::fabs(family_->dcdf(data_[i], alpha));
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) term *= family_->density(data_[j], alpha);
    }
    total += term;
  }
  return total;
}

double HannigDensity::operator()(double alpha) const { return unnormalized(alpha) / norm_; }

double hannig_density(const Family& family, std::span<const double> data, double alpha) {
  return HannigDensity(family, {data.begin(), data.end()})(alpha);
}

double hannig_prior(const Family& family, std::span<const double> data, double alpha) {
  if (data.empty()) throw DomainError("hannig_prior: need n >= 1");
  double total = 0.0;
  for (double x : data) {
    const double f = family.density(x, alpha);
    if (!(f > 0.0)) {
      throw ZeroDensity("hannig_prior: family density vanishes at x = " + std::to_string(x));
    }
    total += std::fabs(family.dcdf(x, alpha)) / f;
  }
  return total;
}

std::vector<double> mcmc_sample(const std::function<double(double)>& log_density,
                                double init, std::size_t steps, std::size_t burn_in,
                                double proposal_sd, RandomSource& rng, std::size_t thin) {
  if (steps == 0) throw DomainError("mcmc_sample: need steps >= 1");
  if (thin == 0) throw DomainError("mcmc_sample: thin must be >= 1");
  if (!(proposal_sd > 0.0)) throw DomainError("mcmc_sample: proposal_sd must be positive");
  double state = init;
  double state_ld = log_density(init);
  if (!std::isfinite(state_ld)) {
    throw DomainError("mcmc_sample: log density not finite at the initial state");
  }
  std::vector<double> out;
  out.reserve((steps > burn_in ? steps - burn_in : 0) / thin + 1);
  std::size_t accepted = 0;
  for (std::size_t step = 0; step < steps; ++step) {
    const double proposal = state + proposal_sd * sample_std_normal(rng);
    const double proposal_ld = log_density(proposal);
    if (proposal_ld - state_ld >= std::log(sample_uniform(rng))) {
      state = proposal;
      state_ld = proposal_ld;
      ++accepted;
    }
    if (step >= burn_in && (step - burn_in) % thin == 0) out.push_back(state);
  }
  const double rate = static_cast<double>(accepted) / static_cast<double>(steps);
  if (rate < 0.001) {
    throw AllRejected("mcmc_sample: acceptance rate " + std::to_string(rate) +
                      " below 0.001; bad proposal scale?");
  }
  return out;
}

double pilot_proposal_sd(const std::function<double(double)>& log_density, double lo,
                         double hi, int grid_points) {
  if (!(hi > lo)) throw DomainError("pilot_proposal_sd: need lo < hi");
  if (grid_points < 8) throw DomainError("pilot_proposal_sd: need at least 8 grid points");
  std::vector<double> ts(grid_points);
  std::vector<double> ld(grid_points);
  double ld_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    ts[i] = lo + (hi - lo) * (i + 0.5) / grid_points;
    ld[i] = log_density(ts[i]);
    ld_max = std::max(ld_max, ld[i]);
  }
  if (!std::isfinite(ld_max)) {
    throw DomainError("pilot_proposal_sd: log density not finite anywhere on the pilot grid");
  }
  double w_sum = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double w = std::exp(ld[i] - ld_max);
    w_sum += w;
    m1 += w * ts[i];
    m2 += w * ts[i] * ts[i];
  }
  m1 /= w_sum;
  m2 /= w_sum;
  const double sd = std::sqrt(std::max(m2 - m1 * m1, 1e-12));
  return 2.4 * sd;
}

std::vector<double> SubspaceGaussian::mean_point() const {
  std::vector<double> point(ambient_dim, 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < ambient_dim; ++i) point[i] += mean_coords[j] * basis[j][i];
  }
  return point;
}

double SubspaceGaussian::density_coords(std::span<const double> coords) const {
  if (coords.size() != mean_coords.size()) {
    throw DomainError("SubspaceGaussian: coordinate dimension mismatch");
  }
  double q = 0.0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const double d = coords[j] - mean_coords[j];
    q += d * d;
  }
  const double dim = static_cast<double>(coords.size());
  return std::exp(-0.5 * q) / std::pow(kTwoPi, 0.5 * dim);
}

std::vector<double> SubspaceGaussian::sample(RandomSource& rng) const {
  std::vector<double> point(ambient_dim, 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double coord = mean_coords[j] + sample_std_normal(rng);
    for (std::size_t i = 0; i < ambient_dim; ++i) point[i] += coord * basis[j][i];
  }
  return point;
}

SubspaceGaussian projection_conditional_fiducial(
    const std::vector<double>& x, const std::vector<std::vector<double>>& basis) {
  if (basis.empty()) throw DomainError("projection_conditional_fiducial: empty basis");
  const std::size_t k = x.size();
  for (const auto& b : basis) {
    if (b.size() != k) {
      throw DomainError("projection_conditional_fiducial: basis/ambient dimension mismatch");
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      double dot = 0.0;
      for (std::size_t t = 0; t < k; ++t) dot += basis[i][t] * basis[j][t];
      const double expected = i == j ? 1.0 : 0.0;
      if (std::fabs(dot - expected) > 1e-10) {
        throw NonOrthonormalBasis(
            "projection_conditional_fiducial: Gram matrix deviates from identity at (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  SubspaceGaussian law;
  law.basis = basis;
  law.ambient_dim = k;
  law.mean_coords.resize(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    double dot = 0.0;
    for (std::size_t t = 0; t < k; ++t) dot += basis[j][t] * x[t];
    law.mean_coords[j] = dot;
  }
  return law;
}

std::vector<double> band_rejection_sample(
    const std::function<std::vector<double>(RandomSource&)>& propose,
    const std::function<double(const std::vector<double>&)>& statistic, double target,
    double eps, const std::function<double(const std::vector<double>&)>& keep,
    RandomSource& rng, std::size_t proposals) {
  if (!(eps > 0.0)) throw DomainError("band_rejection_sample: eps must be positive");
  std::vector<double> kept;
  for (std::size_t i = 0; i < proposals; ++i) {
    const std::vector<double> theta = propose(rng);
    if (std::fabs(statistic(theta) - target) < eps) kept.push_back(keep(theta));
  }
  return kept;
}

}  // namespace fid
