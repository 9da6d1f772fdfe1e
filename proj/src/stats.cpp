#include "fid/stats.hpp"

#include <algorithm>
#include <cmath>

#include "fid/errors.hpp"

namespace fid {

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw EmptySample("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_distance_to_cdf(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
  if (sample.empty()) throw EmptySample("ks_distance_to_cdf: empty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - F,
                             F - static_cast<double>(i) / n));
  }
  return d;
}

double ks_two_sample_threshold(std::size_t m, std::size_t n, double alpha) {
  if (m == 0 || n == 0) throw EmptySample("ks_two_sample_threshold: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("ks_two_sample_threshold: alpha must lie in (0,1)");
  }
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double mm = static_cast<double>(m);
  const double nn = static_cast<double>(n);
  return c * std::sqrt((mm + nn) / (mm * nn));
}

double mean(std::span<const double> values) {
  if (values.empty()) throw EmptySample("mean: empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
  if (values.size() < 2) throw EmptySample("variance: need at least two values");
  const double m = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / (static_cast<double>(values.size()) - 1.0);
}

}  // namespace fid
