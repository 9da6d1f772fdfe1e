#include "fid/experiments.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

#include "fid/errors.hpp"
#include "fid/stats.hpp"

namespace fid {

unsigned fid_worker_count() {
  if (const char* env = std::getenv("FID_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers == 0) workers = fid_worker_count();
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto run = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(
      std::min<std::size_t>(workers, count));
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

CoverageReport coverage_experiment(const FiducialModel& model, double theta0,
                                   std::span<const double> levels, std::size_t reps,
                                   std::size_t draws_per_rep, RandomSource base,
                                   unsigned workers) {
  if (reps < 100) throw DomainError("coverage_experiment: need reps >= 100");
  if (draws_per_rep == 0) throw DomainError("coverage_experiment: need draws_per_rep >= 1");
  if (levels.empty()) throw DomainError("coverage_experiment: need at least one level");
  if (model.direction == Monotonicity::NonMonotone) {
    throw DomainError("coverage_experiment: model must be strictly monotone");
  }
  for (double alpha : levels) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw DomainError("coverage_experiment: levels must lie in (0,1)");
    }
  }
  if (!model.parameter_space.contains(theta0)) {
    throw DomainError("coverage_experiment: theta0 outside the parameter space");
  }

  const std::size_t nlevels = levels.size();
  std::vector<unsigned char> covered(reps * nlevels, 0);

  parallel_for(reps, workers, [&](std::size_t rep) {
    RandomSource rng(base.seed(), base.stream() ^ static_cast<std::uint64_t>(rep));
    std::vector<double> u;
    model.law.fill(rng, u);
    const double x = model.forward(u, theta0);
    const FiducialSample sample = sample_fiducial(model, x, rng, draws_per_rep);
    for (std::size_t li = 0; li < nlevels; ++li) {
      const double upper = fiducial_percentile(sample, 1.0 - levels[li]);
      covered[rep * nlevels + li] = theta0 <= upper ? 1 : 0;
    }
  });

  CoverageReport report;
  report.model_id = model.id;
  report.theta0 = theta0;
  report.levels.assign(levels.begin(), levels.end());
  report.replications = reps;
  report.draws_per_replication = draws_per_rep;
  report.seed = base.seed();
  report.coverages.resize(nlevels, 0.0);
  for (std::size_t li = 0; li < nlevels; ++li) {
    std::size_t hits = 0;
    for (std::size_t rep = 0; rep < reps; ++rep) hits += covered[rep * nlevels + li];
    report.coverages[li] = static_cast<double>(hits) / static_cast<double>(reps);
  }
  return report;
}

EquivalenceResult equivalence_experiment(const FiducialModel& a, const FiducialModel& b,
                                         double x, std::size_t m, RandomSource rng) {
  if (m == 0) throw DomainError("equivalence_experiment: need m >= 1");
  RandomSource rng_a(rng.seed(), rng.stream());
  RandomSource rng_b(rng.seed(), rng.stream());
  const FiducialSample sample_a = sample_fiducial(a, x, rng_a, m);
  const FiducialSample sample_b = sample_fiducial(b, x, rng_b, m);
  EquivalenceResult result;
  result.draws = m;
  result.distance = ks_distance(sample_a.draws, sample_b.draws);
  result.threshold = ks_two_sample_threshold(m, m, 0.01);
  result.pass = result.distance < result.threshold;
  return result;
}

}  // namespace fid
