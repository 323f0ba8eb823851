// Serial reference loop against the OpenMP trial kernel on the same workloads.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rgiso/graph.hpp"
#include "rgiso/montecarlo.hpp"
#include "rgiso/solver.hpp"

using namespace rgiso;

namespace {

struct Workload {
  std::string name;
  std::function<std::int64_t(std::int64_t)> trial;
};

template <class Fn>
double time_ms(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel Monte Carlo trial loops"};
  std::int64_t trials = 200;
  int workers = 0;
  int repeats = 3;
  std::uint64_t seed = 1;
  app.add_option("--trials", trials, "trials per workload")->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "parallel worker threads (0: default)");
  app.add_option("--repeats", repeats, "timed repetitions, best kept")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "master seed");
  CLI11_PARSE(app, argc, argv);
  if (workers <= 0) workers = mc::default_workers();

  const SearchBudget budget{};
  const std::vector<Workload> workloads = {
      {"containment n=14 N=150",
       [&](std::int64_t t) -> std::int64_t {
         const Graph h = gen_gnp(14, 0.5, mc::trial_seed(seed, static_cast<std::uint64_t>(t), 0));
         const Graph g = gen_gnp(150, 0.5, mc::trial_seed(seed, static_cast<std::uint64_t>(t), 1));
         return contains_induced(h, g, budget).verdict == Verdict::Yes;
       }},
      {"copies n=10 N=30",
       [&](std::int64_t t) -> std::int64_t {
         const Graph h = gen_gnp(10, 0.5, mc::trial_seed(seed, static_cast<std::uint64_t>(t), 0));
         const Graph g = gen_gnp(30, 0.5, mc::trial_seed(seed, static_cast<std::uint64_t>(t), 1));
         return static_cast<std::int64_t>(count_induced_subsets(h, g, budget).count);
       }},
      {"mcis N=14",
       [&](std::int64_t t) -> std::int64_t {
         const Graph a = gen_gnp(14, 0.5, mc::trial_seed(seed, static_cast<std::uint64_t>(t), 0));
         const Graph b = gen_gnp(14, 0.5, mc::trial_seed(seed, static_cast<std::uint64_t>(t), 1));
         return mcis_size(a, b, budget).size;
       }},
  };

  std::printf("workers=%d trials=%lld repeats=%d\n", workers, static_cast<long long>(trials), repeats);
  std::printf("%-24s %12s %12s %8s %s\n", "workload", "serial_ms", "parallel_ms", "speedup", "equal");
  bool all_equal = true;
  for (const auto& w : workloads) {
    std::vector<std::int64_t> s, p;
    double best_s = 1e300, best_p = 1e300;
    for (int r = 0; r < repeats; ++r) {
      best_s = std::min(best_s, time_ms([&] { s = mc::run_trials_serial<std::int64_t>(trials, w.trial); }));
      best_p = std::min(best_p, time_ms([&] { p = mc::run_trials_parallel<std::int64_t>(trials, workers, w.trial); }));
    }
    const bool equal = s == p;
    all_equal = all_equal && equal;
    std::printf("%-24s %12.1f %12.1f %8.2f %s\n", w.name.c_str(), best_s, best_p, best_s / best_p, equal ? "yes" : "NO");
  }
  return all_equal ? 0 : 1;
}
