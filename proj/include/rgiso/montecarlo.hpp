#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include "rgiso/graph.hpp"
#include "rgiso/pseudorandom.hpp"
#include "rgiso/solver.hpp"
#include "rgiso/stats.hpp"

namespace rgiso::mc {

/// Execution settings shared by every estimator. workers <= 1 selects the
/// serial reference loop; larger values run the OpenMP kernel.
struct Exec {
  int workers = 1;
};

/// Default worker count: RGISO_WORKERS if set, otherwise available parallelism.
int default_workers();

/// Trial t draws its graphs from Seed{master, 2t} and Seed{master, 2t+1}.
inline Seed trial_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t slot) {
  return Seed{master, 2 * trial + slot};
}

/// Runs fn(t) for t in [0, trials) and returns results in trial order.
/// The serial loop is the reference implementation for the parallel kernel.
template <class R, class Fn>
std::vector<R> run_trials_serial(std::int64_t trials, Fn&& fn) {
  std::vector<R> out(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) out[static_cast<std::size_t>(t)] = fn(t);
  return out;
}

/// Exceptions cannot leave an OpenMP region; the first one by trial index is
/// rethrown after the loop.
template <class R, class Fn>
std::vector<R> run_trials_parallel(std::int64_t trials, int workers, Fn&& fn) {
  std::vector<R> out(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::int64_t t = 0; t < trials; ++t) {
    try {
      out[static_cast<std::size_t>(t)] = fn(t);
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class R, class Fn>
std::vector<R> run_trials(std::int64_t trials, const Exec& exec, Fn&& fn) {
  if (exec.workers <= 1) return run_trials_serial<R>(trials, std::forward<Fn>(fn));
  return run_trials_parallel<R>(trials, exec.workers, std::forward<Fn>(fn));
}

struct EstimateReport {
  double rate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  std::int64_t timeouts = 0;
  Seed seed;
};

/// Aggregates per-trial verdicts; timeouts are excluded from the denominator.
/// Throws UndefinedRateError when every trial timed out.
EstimateReport aggregate(const std::vector<Verdict>& verdicts, Seed seed);

/// Pr(G(n,p1) is an induced subgraph of G(N,p2)).
EstimateReport estimate_containment(int n, double p1, int N, double p2, std::int64_t trials, std::uint64_t seed,
                                    const SearchBudget& budget, const Exec& exec = {});

struct HeatmapCell {
  double x;  ///< pattern edge probability
  double y;  ///< target edge probability
  std::optional<EstimateReport> estimate;  ///< empty when every trial timed out
  std::int64_t timeouts;
};

/// Grid x, y in {1/(k+1), ..., k/(k+1)}, row-major with y outer, x inner.
/// Cell (i, j) uses master seed mix64(seed + cell index).
std::vector<HeatmapCell> heatmap_containment(int N, int n, int grid_k, std::int64_t trials, std::uint64_t seed,
                                             const SearchBudget& budget, const Exec& exec = {});

enum class Reference { Poisson, TNor, TwoPoint };

struct DistributionReport {
  stats::Histogram histogram;  ///< over decided trials
  std::int64_t trials = 0;
  std::int64_t timeouts = 0;
  Reference reference = Reference::Poisson;
  double mu = 0.0;      ///< Poisson mean, or TNor location
  double sigma2 = 0.0;  ///< TNor variance
  double N = 0.0;
  double distance = 0.0;  ///< TV (Poisson) or KS (TNor)
  std::string metric;     ///< "tv" or "ks"
  Seed seed;
};

/// Recomputes a report's distance from its histogram and reference parameters.
double recompute_distance(const DistributionReport& r);

/// Number of induced copies X of G(n,p1) in G(N,p2), compared with Poisson(mu).
/// Requires p2 = 1/2.
DistributionReport copy_count_distribution(int n, int N, double p1, double p2, std::int64_t trials,
                                           std::uint64_t seed, const SearchBudget& budget, const Exec& exec = {});

/// ln(1+X)/ln N against TNor(-c, sigma^2), c = n - (2 log_a N + 1). Requires p2 != 1/2.
DistributionReport log_copy_statistic(int n, int N, double p1, double p2, std::int64_t trials, std::uint64_t seed,
                                      const SearchBudget& budget, const Exec& exec = {});

struct ConcentrationReport {
  DistributionReport distribution;  ///< histogram of exact I_N values
  std::vector<std::int64_t> timeout_lower_bounds;  ///< incumbents of timed-out trials, in trial order
  bool has_interval = false;  ///< false when N < 16
  double n_N = 0.0;
  std::int64_t interval_lo = 0, interval_hi = 0;
  int slack = 1;
  double hit_rate = 0.0;
};

/// Size of the maximum common induced subgraph of G(N,p1) and G(N,p2), with
/// the hit rate inside [interval_lo - slack, interval_hi + slack].
ConcentrationReport mcis_concentration(int N, double p1, double p2, std::int64_t trials, std::uint64_t seed,
                                       const SearchBudget& budget, int slack = 1, const Exec& exec = {});

/// Pr(H is an induced subgraph of G(N,p2)) for one fixed H.
EstimateReport fixed_pattern_containment(const Graph& H, int N, double p2, std::int64_t trials, std::uint64_t seed,
                                         const SearchBudget& budget, const Exec& exec = {});

/// Fraction of sampled graphs satisfying a pseudorandom property.
EstimateReport estimate_property_rate(pseudorandom::Property prop, const pseudorandom::Model& model,
                                      std::int64_t trials, std::uint64_t seed, const Exec& exec = {});

}  // namespace rgiso::mc
