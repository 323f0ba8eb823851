#include "rgiso/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "rgiso/errors.hpp"
#include "rgiso/theory.hpp"

namespace rgiso::mc {

int default_workers() {
  if (const char* env = std::getenv("RGISO_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

EstimateReport aggregate(const std::vector<Verdict>& verdicts, Seed seed) {
  EstimateReport r;
  r.seed = seed;
  r.trials = static_cast<std::int64_t>(verdicts.size());
  for (Verdict v : verdicts) {
    if (v == Verdict::Timeout) ++r.timeouts;
    if (v == Verdict::Yes) ++r.successes;
  }
  const std::int64_t decided = r.trials - r.timeouts;
  if (decided <= 0) throw UndefinedRateError("every trial exhausted its search budget");
  r.rate = static_cast<double>(r.successes) / static_cast<double>(decided);
  const auto ci = stats::wilson95(r.successes, decided);
  r.ci_lo = ci.lo;
  r.ci_hi = ci.hi;
  return r;
}

namespace {

void check_trials(std::int64_t trials) {
  if (trials < 1) throw DomainError("trials must be at least 1");
}

void check_p(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

EstimateReport estimate_containment(int n, double p1, int N, double p2, std::int64_t trials, std::uint64_t seed,
                                    const SearchBudget& budget, const Exec& exec) {
  check_trials(trials);
  check_p(p1, "p1");
  check_p(p2, "p2");
  if (n < 0 || n > N) throw DomainError("estimate_containment requires 0 <= n <= N");
  const auto verdicts = run_trials<Verdict>(trials, exec, [&](std::int64_t t) {
    const Graph pattern = gen_gnp(n, p1, trial_seed(seed, static_cast<std::uint64_t>(t), 0));
    const Graph target = gen_gnp(N, p2, trial_seed(seed, static_cast<std::uint64_t>(t), 1));
    return contains_induced(pattern, target, budget).verdict;
  });
  return aggregate(verdicts, Seed{seed, 0});
}

std::vector<HeatmapCell> heatmap_containment(int N, int n, int grid_k, std::int64_t trials, std::uint64_t seed,
                                             const SearchBudget& budget, const Exec& exec) {
  if (grid_k < 2) throw DomainError("heatmap grid must have at least 2 points per axis");
  check_trials(trials);
  if (n < 0 || n > N) throw DomainError("heatmap requires 0 <= n <= N");
  std::vector<HeatmapCell> cells;
  const double step = 1.0 / (grid_k + 1);
  // Flatten (cell, trial) so the kernel load-balances across the whole grid.
  const std::int64_t ncell = static_cast<std::int64_t>(grid_k) * grid_k;
  const auto verdicts = run_trials<Verdict>(ncell * trials, exec, [&](std::int64_t k) {
    const std::int64_t cell = k / trials;
    const auto t = static_cast<std::uint64_t>(k % trials);
    const double x = static_cast<double>(cell % grid_k + 1) * step;
    const double y = static_cast<double>(cell / grid_k + 1) * step;
    const std::uint64_t cell_seed = mix64(seed + static_cast<std::uint64_t>(cell));
    const Graph pattern = gen_gnp(n, x, trial_seed(cell_seed, t, 0));
    const Graph target = gen_gnp(N, y, trial_seed(cell_seed, t, 1));
    return contains_induced(pattern, target, budget).verdict;
  });
  for (std::int64_t cell = 0; cell < ncell; ++cell) {
    HeatmapCell c;
    c.x = static_cast<double>(cell % grid_k + 1) * step;
    c.y = static_cast<double>(cell / grid_k + 1) * step;
    std::vector<Verdict> mine(verdicts.begin() + cell * trials, verdicts.begin() + (cell + 1) * trials);
    c.timeouts = 0;
    for (Verdict v : mine) c.timeouts += v == Verdict::Timeout ? 1 : 0;
    if (c.timeouts < trials) c.estimate = aggregate(mine, Seed{mix64(seed + static_cast<std::uint64_t>(cell)), 0});
    cells.push_back(c);
  }
  return cells;
}

double recompute_distance(const DistributionReport& r) {
  switch (r.reference) {
    case Reference::Poisson: return stats::tv_distance_poisson(r.histogram, r.mu);
    case Reference::TNor: return stats::ks_log_statistic_tnor(r.histogram, r.N, r.mu, r.sigma2);
    case Reference::TwoPoint: return 0.0;
  }
  return 0.0;
}

namespace {

struct CountTrial {
  std::int64_t value = 0;
  bool timed_out = false;
};

DistributionReport copy_counts(int n, int N, double p1, double p2, std::int64_t trials, std::uint64_t seed,
                               const SearchBudget& budget, const Exec& exec) {
  check_trials(trials);
  check_p(p1, "p1");
  check_p(p2, "p2");
  if (n < 1 || n > N) throw DomainError("copy counts require 1 <= n <= N");
  const auto results = run_trials<CountTrial>(trials, exec, [&](std::int64_t t) {
    const Graph pattern = gen_gnp(n, p1, trial_seed(seed, static_cast<std::uint64_t>(t), 0));
    const Graph target = gen_gnp(N, p2, trial_seed(seed, static_cast<std::uint64_t>(t), 1));
    const CountOutcome c = count_induced_subsets(pattern, target, budget);
    return CountTrial{static_cast<std::int64_t>(c.count), c.timed_out};
  });
  DistributionReport r;
  r.trials = trials;
  r.seed = Seed{seed, 0};
  r.N = N;
  for (const auto& c : results) {
    if (c.timed_out) {
      ++r.timeouts;
    } else {
      ++r.histogram[c.value];
    }
  }
  if (r.timeouts == trials) throw UndefinedRateError("every trial exhausted its search budget");
  return r;
}

}  // namespace

DistributionReport copy_count_distribution(int n, int N, double p1, double p2, std::int64_t trials,
                                           std::uint64_t seed, const SearchBudget& budget, const Exec& exec) {
  if (p2 != 0.5) throw DomainError("the Poisson comparison applies at p2 = 1/2");
  DistributionReport r = copy_counts(n, N, p1, p2, trials, seed, budget, exec);
  r.reference = Reference::Poisson;
  r.mu = theory::poisson_mean_mu(N, n);
  r.metric = "tv";
  r.distance = recompute_distance(r);
  return r;
}

DistributionReport log_copy_statistic(int n, int N, double p1, double p2, std::int64_t trials, std::uint64_t seed,
                                      const SearchBudget& budget, const Exec& exec) {
  if (p2 == 0.5) throw DomainError("the squashed normal comparison applies at p2 != 1/2");
  if (N < 2) throw DomainError("log statistic requires N >= 2");
  const ProbPair pp(p1, p2);
  DistributionReport r = copy_counts(n, N, p1, p2, trials, seed, budget, exec);
  r.reference = Reference::TNor;
  r.mu = -(static_cast<double>(n) - theory::threshold_n_star(pp, N));
  r.sigma2 = theory::sigma2(pp);
  r.metric = "ks";
  r.distance = recompute_distance(r);
  return r;
}

ConcentrationReport mcis_concentration(int N, double p1, double p2, std::int64_t trials, std::uint64_t seed,
                                       const SearchBudget& budget, int slack, const Exec& exec) {
  check_trials(trials);
  check_p(p1, "p1");
  check_p(p2, "p2");
  if (N < 1) throw DomainError("mcis_concentration requires N >= 1");
  if (slack < 0) throw DomainError("slack must be non-negative");
  const auto results = run_trials<McisOutcome>(trials, exec, [&](std::int64_t t) {
    const Graph g1 = gen_gnp(N, p1, trial_seed(seed, static_cast<std::uint64_t>(t), 0));
    const Graph g2 = gen_gnp(N, p2, trial_seed(seed, static_cast<std::uint64_t>(t), 1));
    return mcis_size(g1, g2, budget);
  });
  ConcentrationReport r;
  r.slack = slack;
  auto& d = r.distribution;
  d.trials = trials;
  d.seed = Seed{seed, 0};
  d.N = N;
  d.reference = Reference::TwoPoint;
  d.metric = "hit_rate";
  for (const auto& m : results) {
    if (m.timed_out) {
      ++d.timeouts;
      r.timeout_lower_bounds.push_back(m.size);
    } else {
      ++d.histogram[m.size];
    }
  }
  const std::int64_t decided = trials - d.timeouts;
  if (N >= 16 && p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0) {
    const auto loc = theory::n_N(ProbPair(p1, p2), N);
    r.has_interval = true;
    r.n_N = loc.n_N;
    r.interval_lo = loc.interval_lo;
    r.interval_hi = loc.interval_hi;
    std::int64_t hits = 0;
    for (const auto& [v, c] : d.histogram)
      if (v >= r.interval_lo - slack && v <= r.interval_hi + slack) hits += c;
    r.hit_rate = decided > 0 ? static_cast<double>(hits) / static_cast<double>(decided) : 0.0;
    d.distance = r.hit_rate;
  }
  return r;
}

EstimateReport fixed_pattern_containment(const Graph& H, int N, double p2, std::int64_t trials, std::uint64_t seed,
                                         const SearchBudget& budget, const Exec& exec) {
  check_trials(trials);
  check_p(p2, "p2");
  const auto verdicts = run_trials<Verdict>(trials, exec, [&](std::int64_t t) {
    const Graph target = gen_gnp(N, p2, trial_seed(seed, static_cast<std::uint64_t>(t), 1));
    return contains_induced(H, target, budget).verdict;
  });
  return aggregate(verdicts, Seed{seed, 0});
}

EstimateReport estimate_property_rate(pseudorandom::Property prop, const pseudorandom::Model& model,
                                      std::int64_t trials, std::uint64_t seed, const Exec& exec) {
  check_trials(trials);
  const auto verdicts = run_trials<Verdict>(trials, exec, [&](std::int64_t t) {
    const Graph g = pseudorandom::sample(model, trial_seed(seed, static_cast<std::uint64_t>(t), 0));
    return pseudorandom::evaluate(prop, model, g) ? Verdict::Yes : Verdict::No;
  });
  return aggregate(verdicts, Seed{seed, 0});
}

}  // namespace rgiso::mc
