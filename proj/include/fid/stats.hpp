#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fid {

/// Two-sample Kolmogorov-Smirnov distance: the sup-norm distance between the
/// empirical CDFs. Inputs need not be pre-sorted (copies are sorted).
/// Throws EmptySample if either sample is empty.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// One-sample KS distance between the empirical CDF of the sample and a
/// continuous CDF.
double ks_distance_to_cdf(std::vector<double> sample,
                          const std::function<double(double)>& cdf);

/// Critical distance c(alpha)*sqrt((m+n)/(m*n)) for the two-sample KS test.
double ks_two_sample_threshold(std::size_t m, std::size_t n, double alpha);

double mean(std::span<const double> values);
double variance(std::span<const double> values);

}  // namespace fid
