#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fid/fiducial.hpp"
#include "fid/random.hpp"

namespace fid {

struct CoverageReport {
  std::string model_id;
  double theta0 = 0.0;
  std::vector<double> levels;     // alpha values
  std::vector<double> coverages;  // empirical P(theta0 <= theta_{1-alpha}(X))
  std::size_t replications = 0;
  std::size_t draws_per_replication = 0;
  std::uint64_t seed = 0;
};

/// Repeated-sampling coverage audit of the one-sided upper fiducial bounds of
/// a simple, strictly monotone model. Per replication: simulate x at theta0,
/// draw the fiducial, record whether theta0 <= theta_{1-alpha}(x) per level.
/// Replications run in parallel on derived streams
/// (stream id = base.stream() ^ replication index), so the report is
/// identical for any worker count. workers == 0 picks FID_THREADS or the
/// hardware concurrency.
CoverageReport coverage_experiment(const FiducialModel& model, double theta0,
                                   std::span<const double> levels, std::size_t reps,
                                   std::size_t draws_per_rep, RandomSource base,
                                   unsigned workers = 0);

struct EquivalenceResult {
  double distance = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::size_t draws = 0;
};

/// Two-sample KS comparison of the fiducial samples of two models at the same
/// observation, each drawn with the same (seed, stream) so that identical
/// models give distance exactly 0. Pass/fail at the 1% KS critical value.
EquivalenceResult equivalence_experiment(const FiducialModel& a, const FiducialModel& b,
                                         double x, std::size_t m, RandomSource rng);

/// Worker count: FID_THREADS when set and positive, otherwise the hardware
/// concurrency (at least 1).
unsigned fid_worker_count();

/// Runs body(i) for i in [0, count) on up to `workers` threads. Exceptions
/// from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace fid
