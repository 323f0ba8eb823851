// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "../oracles.hpp"
#include "rgiso/montecarlo.hpp"
#include "rgiso/report_io.hpp"
#include "rgiso/solver.hpp"
#include "rgiso/theory.hpp"

using namespace rgiso;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [miss]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, const Outcome& o, double secs) {
  if (!o.pass) ++failures;
  std::printf("criterion %2d: %s  (%.1f s)  %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
  std::fflush(stdout);
}

void check_runtime(Outcome& o, double secs, double limit) {
  o.require(secs < limit, "runtime " + fmt("%.1f", secs) + " s < " + fmt("%.0f", limit) + " s");
}

Outcome formulas() {
  Outcome o;
  double worst = 0;
  for (double p1 : {0.05, 0.3, 0.5, 0.77, 0.95}) worst = std::max(worst, std::abs(theory::base_a(ProbPair(p1, 0.5)) - 2.0));
  o.require(worst <= 4 * std::numeric_limits<double>::epsilon(), "base_a(., 1/2) - 2 = " + fmt("%.3g", worst));
  bool zero = true;
  for (double p1 : {0.05, 0.3, 0.5, 0.77, 0.95}) zero = zero && theory::sigma2(ProbPair(p1, 0.5)) == 0.0;
  o.require(zero, "sigma2(., 1/2) = 0");
  o.require(std::abs(theory::phat(ProbPair(0.3, 0.7)) - 0.5) <= 1e-15, "phat(0.3, 0.7) = 1/2");
  const theory::BFamily half(ProbPair(0.5, 0.5));
  o.require(std::abs(half.b0(0.5) - 2.0) <= 1e-15, "b0(1/2) = 2 at p1 = p2 = 1/2");
  double dev = 0;
  for (int k = 1; k <= 9; ++k) {
    const double p = k / 10.0;
    const theory::BFamily fam(ProbPair(p, p));
    dev = std::max(dev, std::abs(fam.b0(fam.phat()) - 1.0 / (p * p + (1 - p) * (1 - p))));
  }
  o.require(dev <= 1e-12, "b0(phat) vs 1/(p^2+(1-p)^2) max dev " + fmt("%.3g", dev));
  return o;
}

Outcome implicit_solver() {
  Outcome o;
  const double x = theory::xi_N(2.0, 20.0 / std::numbers::e);
  o.require(std::abs(x - 5.0) <= 1e-9, "xi_N(2, 20/e) = " + fmt("%.12g", x));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ub(1.01, 20.0), ue(0.5, 12.0);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double b = ub(rng), N = std::pow(10.0, ue(rng));
    const double r = theory::xi_N(b, N);
    worst = std::max(worst, std::abs(r * std::pow(b, (r - 1) / 2) - std::numbers::e * N) / (std::numbers::e * N));
  }
  o.require(worst <= 1e-9, "max relative residual " + fmt("%.3g", worst));
  double prev = INFINITY;
  bool decreasing = true;
  std::string gaps;
  for (double N : {1e6, 1e9, 1e12}) {
    const double d = std::abs(theory::xi_N(2, N) - theory::xi_asymptotic(2, N));
    decreasing = decreasing && d < prev;
    prev = d;
    gaps += (gaps.empty() ? "" : ", ") + fmt("%.4g", d);
  }
  o.require(decreasing, "|xi - xi_asym| at 1e6, 1e9, 1e12: " + gaps);
  return o;
}

Outcome optimizer() {
  Outcome o;
  const ProbPair half(0.5, 0.5);
  const auto rep = theory::n_N(half, 1000);
  o.require(std::abs(rep.n_N - theory::x0_N(half, 0.5, 1000)) <= 1e-6, "n_N = x0_N(1/2) = " + fmt("%.7f", rep.n_N));
  o.require(std::abs(rep.n_N - 33.1147) <= 1e-3, "n_N near the quoted 33.1147");
  o.require(rep.region == theory::Region::A, std::string("region ") + theory::to_string(rep.region));
  std::mt19937_64 rng(3);
  // Same interior as the region map.
  std::uniform_real_distribution<double> u(0.05, 0.95);
  double worst = 0;
  for (int r = 0; r < 20; ++r) {
    const ProbPair pp(u(rng), u(rng));
    const double g0 = theory::BFamily(pp).g(theory::g_minimizer_p0(pp));
    for (int e = 3; e <= 12; ++e) {
      const double N = std::pow(10.0, e);
      worst = std::max(worst, std::abs(theory::n_N(pp, N).n_N - 4 * std::log(N) / g0) / std::log(std::log(N)));
    }
  }
  o.require(worst <= 25, "first-order deviation max " + fmt("%.3f", worst) + " <= 25");
  return o;
}

Outcome region_map() {
  Outcome o;
  const int k = 21;
  const auto cells = io::region_map(k);
  auto at = [&](int i, int j) { return cells[static_cast<std::size_t>(j * k + i)].region; };
  bool diag = true, sym = true;
  for (int i = 0; i < k; ++i) {
    diag = diag && at(i, i) == theory::Region::A;
    for (int j = 0; j < k; ++j) {
      const auto a = at(i, j), b = at(j, i);
      const auto mirrored = a == theory::Region::A ? a : (a == theory::Region::B1 ? theory::Region::B2 : theory::Region::B1);
      sym = sym && b == mirrored;
    }
  }
  o.require(diag, "diagonal all A");
  o.require(sym, "transpose symmetric with B1 <-> B2");
  const auto b1 = theory::classify_region(ProbPair(0.5, 0.05)).region;
  const auto b2 = theory::classify_region(ProbPair(0.05, 0.5)).region;
  o.require(b1 == theory::Region::B1, std::string("(0.5, 0.05) ") + theory::to_string(b1));
  o.require(b2 == theory::Region::B2, std::string("(0.05, 0.5) ") + theory::to_string(b2));
  return o;
}

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

Outcome solver_oracles() {
  Outcome o;
  std::uint64_t state = 12345;
  std::mt19937_64 rng(5);
  int count_ok = 0;
  for (int i = 0; i < 200; ++i) {
    const int hn = 1 + static_cast<int>(rng() % 5);
    const int gn = hn + static_cast<int>(rng() % static_cast<std::uint64_t>(10 - hn));
    const double p = 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
    const Graph h = oracle::random_graph(hn, p, state);
    const Graph g = oracle::random_graph(gn, p, state);
    count_ok += count_induced_subsets(h, g).count == oracle::count_subsets(h, g) ? 1 : 0;
  }
  o.require(count_ok == 200, "count_induced_subsets " + std::to_string(count_ok) + "/200");
  int mcis_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const Graph a = oracle::random_graph(1 + static_cast<int>(rng() % 7), 0.5, state);
    const Graph b = oracle::random_graph(1 + static_cast<int>(rng() % 7), 0.5, state);
    const auto m = mcis_size(a, b);
    mcis_ok += !m.timed_out && m.size == oracle::mcis(a, b) ? 1 : 0;
  }
  o.require(mcis_ok == 100, "mcis_size " + std::to_string(mcis_ok) + "/100");
  bool identity = true;
  for (int n = 1; n <= 6; ++n) {
    const int pairs = n * (n - 1) / 2;
    std::map<std::string, std::pair<int, std::uint64_t>> classes;  // form -> (m, |Aut|)
    for (std::uint32_t mask = 0; mask < (1U << pairs); ++mask) {
      GraphBuilder b(n);
      int bit = 0;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
          if (mask >> bit & 1U) b.add_edge(u, v);
      const Graph g = std::move(b).build();
      classes.try_emplace(canonical_form(g), static_cast<int>(g.edge_count()), automorphism_count(g));
    }
    std::vector<std::uint64_t> sum(static_cast<std::size_t>(pairs + 1), 0);
    std::uint64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
    for (const auto& [form, ma] : classes) sum[static_cast<std::size_t>(ma.first)] += fact / ma.second;
    for (int m = 0; m <= pairs; ++m) identity = identity && sum[static_cast<std::size_t>(m)] == binom(pairs, m);
  }
  o.require(identity, "sum n!/|Aut| = C(C(n,2), m) for n <= 6");
  return o;
}

// Criteria 6 to 10: Monte Carlo runs whose serialized reports are kept for
// the determinism comparison.
struct McRun {
  std::map<std::string, std::string> files;
  Outcome c6, c7, c8, c9, c10;
  double t6 = 0, t7 = 0, t8 = 0, t9 = 0, t10 = 0;
};

std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

McRun run_monte_carlo(int workers, const fs::path& dir) {
  McRun run;
  const mc::Exec exec{workers};
  fs::create_directories(dir);

  {
    const auto t0 = std::chrono::steady_clock::now();
    const SearchBudget budget{std::nullopt, 10000};
    const auto r10 = mc::estimate_containment(10, 0.5, 150, 0.5, 200, 6, budget, exec);
    const auto r30 = mc::estimate_containment(30, 0.5, 150, 0.5, 200, 6, budget, exec);
    run.t6 = seconds_since(t0);
    run.files["containment_n10.json"] = dump(io::to_json(r10));
    run.files["containment_n30.json"] = dump(io::to_json(r30));
    auto& o = run.c6;
    o.require(r10.rate >= 0.95, "rate(n=10) " + fmt("%.3f", r10.rate) + " >= 0.95");
    o.require(r30.rate <= 0.05, "rate(n=30) " + fmt("%.3f", r30.rate) + " <= 0.05");
    o.require(r10.timeouts <= 10 && r30.timeouts <= 10,
              "timeouts " + std::to_string(r10.timeouts) + ", " + std::to_string(r30.timeouts) + " <= 10");
    check_runtime(o, run.t6, 1200);
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = mc::copy_count_distribution(10, 30, 0.5, 0.5, 2000, 7, SearchBudget{}, exec);
    run.t7 = seconds_since(t0);
    run.files["copies_n10_N30.json"] = dump(io::to_json(r));
    auto& o = run.c7;
    // (30)_10 fits in 64 bits; 2^45 is exact in long double.
    std::uint64_t falling = 1;
    for (int i = 0; i < 10; ++i) falling *= static_cast<std::uint64_t>(30 - i);
    const long double mu_int = static_cast<long double>(falling) / std::ldexp(1.0L, 45);
    o.require(std::abs(static_cast<long double>(r.mu) - mu_int) <= 1e-15L * mu_int &&
                  theory::poisson_mean_mu_exact(30, 10) == r.mu,
              "mu " + fmt("%.6f", r.mu) + " matches integer arithmetic");
    o.require(r.distance <= 0.1, "d_TV " + fmt("%.4f", r.distance) + " <= 0.1");
    const auto [mean, se] = stats::mean_and_se(r.histogram);
    o.require(std::abs(mean - r.mu) <= 4 * se,
              "mean " + fmt("%.4f", mean) + " within 4 SE (" + fmt("%.4f", 4 * se) + ") of mu");
    o.require(r.timeouts == 0, "no timeouts");
    check_runtime(o, run.t7, 1800);
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const ProbPair pp(0.5, 0.3);
    const int n = static_cast<int>(std::lround(theory::threshold_n_star(pp, 100)));
    const auto r = mc::log_copy_statistic(n, 100, 0.5, 0.3, 500, 8, SearchBudget{}, exec);
    run.t8 = seconds_since(t0);
    run.files["log_copies_N100.json"] = dump(io::to_json(r));
    auto& o = run.c8;
    const auto zeros = r.histogram.count(0) ? r.histogram.at(0) : 0;
    const double atom = static_cast<double>(zeros) / static_cast<double>(stats::total(r.histogram));
    const double F0 = theory::tnor_cdf(0.0, r.mu, r.sigma2);
    o.require(r.distance <= 0.25, "n " + std::to_string(n) + ", KS " + fmt("%.4f", r.distance) + " <= 0.25");
    o.require(std::abs(atom - F0) <= 0.15, "atom " + fmt("%.3f", atom) + " vs F(0) " + fmt("%.3f", F0));
    check_runtime(o, run.t8, 1800);
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = mc::mcis_concentration(24, 0.5, 0.5, 10, 9, SearchBudget{std::nullopt, 60000}, 2, exec);
    run.t9 = seconds_since(t0);
    run.files["mcis_N24.json"] = dump(io::to_json(r));
    auto& o = run.c9;
    const auto& h = r.distribution.histogram;
    const std::int64_t width = h.empty() ? 0 : h.rbegin()->first - h.begin()->first + 1;
    o.require(!h.empty() && width <= 5, "support width " + std::to_string(width) + " <= 5");
    o.require(r.hit_rate >= 0.8, "hit rate " + fmt("%.2f", r.hit_rate) + " in [" + std::to_string(r.interval_lo - 2) +
                                     ", " + std::to_string(r.interval_hi + 2) + "], n_N " + fmt("%.3f", r.n_N));
    o.require(r.distribution.timeouts == 0, "timeouts " + std::to_string(r.distribution.timeouts));
    check_runtime(o, run.t9, 900);
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    using namespace pseudorandom;
    const auto a = mc::estimate_property_rate(Property::A, GnpModel{30, 0.5}, 200, 10, exec);
    const auto asym = mc::estimate_property_rate(Property::Asym, GnpModel{30, 0.5}, 200, 10, exec);
    const auto f = mc::estimate_property_rate(Property::F, GnpModel{30, 0.5}, 500, 10, exec);
    const auto ae = mc::estimate_property_rate(Property::AE, GnmModel{20, 95}, 100, 10, exec);
    run.t10 = seconds_since(t0);
    run.files["property_A_n30.json"] = dump(io::to_json(a));
    run.files["property_asym_n30.json"] = dump(io::to_json(asym));
    run.files["property_F_n30.json"] = dump(io::to_json(f));
    run.files["property_AE_n20_m95.json"] = dump(io::to_json(ae));
    auto& o = run.c10;
    o.require(a.rate >= 0.95, "A rate " + fmt("%.3f", a.rate) + " >= 0.95 (whole-graph asymmetry " +
                                  fmt("%.3f", asym.rate) + ")");
    o.require(f.rate >= 0.99, "F rate " + fmt("%.3f", f.rate) + " >= 0.99");
    o.require(ae.rate >= 0.9, "A&E rate " + fmt("%.3f", ae.rate) + " >= 0.9");
    check_runtime(o, run.t10, 600);
  }
  for (const auto& [name, body] : run.files) std::ofstream(dir / name, std::ios::binary) << body;
  return run;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_artifacts");

  auto timed = [](int id, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = fn();
    const double secs = seconds_since(t0);
    return std::make_tuple(id, o, secs);
  };
  const double limits[] = {1, 5, 30, 10, 120};
  const std::function<Outcome()> fast[] = {formulas, implicit_solver, optimizer, region_map, solver_oracles};
  for (int i = 0; i < 5; ++i) {
    auto [id, o, secs] = timed(i + 1, fast[i]);
    check_runtime(o, secs, limits[i]);
    report(id, o, secs);
  }

  const int other = std::max(3, mc::default_workers());
  const McRun first = run_monte_carlo(1, out / "workers_1");
  report(6, first.c6, first.t6);
  report(7, first.c7, first.t7);
  report(8, first.c8, first.t8);
  report(9, first.c9, first.t9);
  report(10, first.c10, first.t10);

  const auto t0 = std::chrono::steady_clock::now();
  const fs::path second_dir = out / ("workers_" + std::to_string(other));
  run_monte_carlo(other, second_dir);
  Outcome o;
  int same = 0;
  for (const auto& [name, body] : first.files) {
    const bool eq = slurp(out / "workers_1" / name) == slurp(second_dir / name);
    same += eq ? 1 : 0;
    if (!eq) o.require(false, name + " differs");
  }
  o.require(same == static_cast<int>(first.files.size()),
            std::to_string(same) + "/" + std::to_string(first.files.size()) + " files byte-identical, workers 1 vs " +
                std::to_string(other));
  report(11, o, seconds_since(t0));

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
