#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rgiso/graph.hpp"

namespace rgiso::theory {

// All logarithms are natural; log_b(x) is evaluated as ln x / ln b.

/// Standard normal CDF, Phi(x) = erfc(-x / sqrt 2) / 2.
double normal_cdf(double x);

/// Containment base a = 1 / (p2^p1 (1-p2)^(1-p1)).
double base_a(const ProbPair& pp);
/// ln a = -p1 ln p2 - (1-p1) ln(1-p2), computed directly.
double log_base_a(const ProbPair& pp);

/// Threshold location n* = 2 log_a N + 1.
double threshold_n_star(const ProbPair& pp, double N);

/// Limit variance sigma^2 = 2 p1 (1-p1) log_a^2(1/p2 - 1); zero iff p2 = 1/2.
double sigma2(const ProbPair& pp);

/// psi = log_a(p2 / (1-p2)).
double psi(const ProbPair& pp);

/// Window width (ln ln N)^2 / ln N. Requires N > 1.
double epsilon_N(double N);

/// f(c) = P(Normal(0, sigma^2) >= c). Throws DomainError when p2 = 1/2.
double limit_f(const ProbPair& pp, double c);

/// CDF of the squashed normal: 0 for x < 0, Phi((x - mu)/sigma) for x >= 0.
double tnor_cdf(double x, double mu, double sigma2);

/// mu = (N)_n 2^{-C(n,2)}, evaluated in log space.
double poisson_mean_mu(std::int64_t N, std::int64_t n);
double log_poisson_mean_mu(std::int64_t N, std::int64_t n);
/// Same quantity by exact rational arithmetic; n <= 12.
double poisson_mean_mu_exact(std::int64_t N, std::int64_t n);

/// ln (N)_n, the falling factorial.
double log_falling_factorial(std::int64_t N, std::int64_t n);

/// ln E X_H = ln[(N)_n p^m (1-p)^{C(n,2)-m} / aut].
double expected_copies_log(std::int64_t N, std::int64_t n, std::int64_t m, double p, std::uint64_t aut);

enum class Containment { ZeroWHP, OneWHP, Indeterminate };
const char* to_string(Containment c) noexcept;

struct FixedPatternPrediction {
  double psi;
  double delta_m;
  double c_N;
  double eps_N;
  double score;  ///< psi * delta_m - c_N
  Containment verdict;
};

/// Classifies psi*delta_m - c_N against +-eps_N for an n-vertex, m-edge pattern.
FixedPatternPrediction predict_fixed_pattern_containment(std::int64_t n, std::int64_t m, std::int64_t N,
                                                         const ProbPair& pp);

struct ThresholdReport {
  double p1, p2;
  double N;
  double a;
  double n_star;
  double sigma2;
  double psi;
  double eps_N;
};

ThresholdReport threshold_report(const ProbPair& pp, double N);

/// Expected edge density of a common subgraph: p1 p2 / (p1 p2 + (1-p1)(1-p2)).
double phat(const ProbPair& pp);

/// Evaluators for ln b0, ln b1, ln b2 and g = max{ln b0, 2 ln b1, 2 ln b2} on
/// [0, 1], with 0 ln 0 = 0 at the endpoints.
class BFamily {
 public:
  explicit BFamily(const ProbPair& pp);

  double log_b0(double p) const;
  double log_b1(double p) const { return log_bi(p, p1_); }
  double log_b2(double p) const { return log_bi(p, p2_); }
  double log_b(int which, double p) const;
  double b0(double p) const;
  double b1(double p) const;
  double b2(double p) const;
  double g(double p) const;

  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  double phat() const noexcept { return phat_; }

 private:
  static double log_bi(double p, double pi);

  double p1_, p2_, phat_;
};

/// Unique minimizer of the convex g on [0, 1] by golden-section search.
double g_minimizer_p0(const ProbPair& pp, double tol = 1e-10);

/// x0_N(p) = 4 log_b0 N - 2 log_b0 log_b0 N - 2 log_b0(4/e) + 1 with b0 = b0(p).
double x0_N(const ProbPair& pp, double p, double N);
/// Same, from ln b0 directly.
double x0_from_log_b(double log_b0, double N);

/// Unique x with x * b^{(x-1)/2} = e N; exactly e N when b = 1.
double xi_N(double b, double N);
/// Same, from ln b (>= 0) directly.
double xi_from_log_b(double log_b, double N);

/// 2 log_b N - 2 log_b log_b N - 2 log_b(2/e) + 1.
double xi_asymptotic(double b, double N);

/// min{x0, x1, x2} at edge density p.
double envelope(const BFamily& fam, double p, double N);

enum class Region { A, B1, B2 };
const char* to_string(Region r) noexcept;

struct RegionInfo {
  Region region;
  double p0;        ///< minimizer of g located by the region rule
  bool ambiguous;   ///< both B conditions held at phat
};

/// Region rule at phat: A iff ln b0 > max(2 ln b1, 2 ln b2), otherwise B_i for
/// the violated index, p0 then being the root of 2 ln b_i - ln b0 between phat and p_i.
RegionInfo classify_region(const ProbPair& pp);

struct McisLocationReport {
  double p1, p2;
  double N;
  Region region;
  bool ambiguous;
  double p_opt;
  double p0;
  double phat;
  double g_p0;
  double x0, x1, x2;
  double n_N;
  double eps_N;
  std::int64_t interval_lo, interval_hi;
};

/// n_N = max over p in [0,1] of min{x0, x1, x2}. Requires N >= 16.
McisLocationReport n_N(const ProbPair& pp, double N);

/// (floor(n_N - eps_N), floor(n_N + eps_N)).
std::pair<std::int64_t, std::int64_t> two_point_interval(const ProbPair& pp, double N);

/// Points (x, y) = (p1, p2) where 2 log_a N + 1 = n, one polyline per branch
/// (y below x and y above x), sampled at `columns` values of x in (0, 1).
std::vector<std::vector<std::pair<double, double>>> threshold_curve(double N, double n, int columns);

}  // namespace rgiso::theory
