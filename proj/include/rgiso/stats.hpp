#pragma once

#include <cstdint>
#include <map>
#include <utility>

namespace rgiso::stats {

/// Histogram over non-negative integers: value -> count.
using Histogram = std::map<std::int64_t, std::int64_t>;

struct Interval {
  double lo;
  double hi;
};

/// Wilson score interval at 95% confidence (z = 1.959963984540054).
Interval wilson95(std::int64_t successes, std::int64_t trials);

/// Poisson(mu) probability mass at k, evaluated in log space.
double poisson_pmf(std::int64_t k, double mu);

/// Total variation distance between the empirical law of a histogram and
/// Poisson(mu): half the L1 distance, with the Poisson mass beyond the largest
/// observed value counted as unmatched.
double tv_distance_poisson(const Histogram& h, double mu);

/// Kolmogorov-Smirnov statistic between the empirical law of
/// ln(1 + X) / ln N (X drawn from the histogram) and TNor(mu, sigma2),
/// including the atom at 0.
double ks_log_statistic_tnor(const Histogram& h, double N, double mu, double sigma2);

/// Sample mean and standard error of the mean.
std::pair<double, double> mean_and_se(const Histogram& h);

std::int64_t total(const Histogram& h);

}  // namespace rgiso::stats
