#include "rgiso/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rgiso/errors.hpp"
#include "rgiso/theory.hpp"

namespace rgiso::stats {

Interval wilson95(std::int64_t successes, std::int64_t trials) {
  if (trials <= 0) throw UndefinedRateError("Wilson interval needs at least one trial");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(phat, centre - half)), std::min(1.0, std::max(phat, centre + half))};
}

double poisson_pmf(std::int64_t k, double mu) {
  if (k < 0) return 0.0;
  if (mu == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(mu) - mu - std::lgamma(kd + 1.0));
}

std::int64_t total(const Histogram& h) {
  std::int64_t t = 0;
  for (const auto& [v, c] : h) t += c;
  return t;
}

double tv_distance_poisson(const Histogram& h, double mu) {
  const std::int64_t n = total(h);
  if (n == 0) throw UndefinedRateError("TV distance of an empty histogram");
  const std::int64_t kmax = h.empty() ? 0 : h.rbegin()->first;
  double l1 = 0.0;
  double covered = 0.0;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    const double ref = poisson_pmf(k, mu);
    const auto it = h.find(k);
    const double emp = it == h.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
    l1 += std::abs(emp - ref);
    covered += ref;
  }
  l1 += std::max(0.0, 1.0 - covered);
  return std::min(1.0, 0.5 * l1);
}

double ks_log_statistic_tnor(const Histogram& h, double N, double mu, double sigma2) {
  const std::int64_t n = total(h);
  if (n == 0) throw UndefinedRateError("KS statistic of an empty histogram");
  const double lnN = std::log(N);
  double cum = 0.0;
  double d = 0.0;
  for (const auto& [x, c] : h) {
    const double y = std::log1p(static_cast<double>(x)) / lnN;
    const double f = theory::tnor_cdf(y, mu, sigma2);
    // Left limit of the reference CDF: the atom at 0 is excluded at y = 0.
    const double f_left = y > 0.0 ? f : 0.0;
    const double before = cum;
    cum += static_cast<double>(c) / static_cast<double>(n);
    d = std::max({d, std::abs(before - f_left), std::abs(cum - f)});
  }
  return std::min(1.0, d);
}

std::pair<double, double> mean_and_se(const Histogram& h) {
  const std::int64_t n = total(h);
  if (n == 0) throw UndefinedRateError("mean of an empty histogram");
  double s = 0.0, s2 = 0.0;
  for (const auto& [x, c] : h) {
    s += static_cast<double>(x) * static_cast<double>(c);
    s2 += static_cast<double>(x) * static_cast<double>(x) * static_cast<double>(c);
  }
  const double nd = static_cast<double>(n);
  const double mean = s / nd;
  const double var = n > 1 ? std::max(0.0, (s2 - nd * mean * mean) / (nd - 1.0)) : 0.0;
  return {mean, std::sqrt(var / nd)};
}

}  // namespace rgiso::stats
