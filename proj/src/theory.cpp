#include "rgiso/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "rgiso/errors.hpp"

namespace rgiso::theory {

namespace {

constexpr double kE = std::numbers::e;

// x ln(x / y) with the 0 ln 0 = 0 convention.
double xlog_ratio(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); }

template <class F>
double bisect_root(F&& f, double lo, double hi, int iterations = 200) {
  // Requires f(lo) and f(hi) of opposite sign (or zero).
  double flo = f(lo);
  for (int k = 0; k < iterations && hi != lo; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimization of a unimodal function on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

void require_N(double N, double min, const char* what) {
  if (!(N >= min)) throw DomainError(std::string(what) + ": N too small");
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log_base_a(const ProbPair& pp) {
  return -pp.p1() * std::log(pp.p2()) - (1.0 - pp.p1()) * std::log1p(-pp.p2());
}

double base_a(const ProbPair& pp) {
  if (pp.p2() == 1.0 - pp.p2()) return 1.0 / pp.p2();
  return 1.0 / (std::pow(pp.p2(), pp.p1()) * std::pow(1.0 - pp.p2(), 1.0 - pp.p1()));
}

double threshold_n_star(const ProbPair& pp, double N) {
  require_N(N, 1.0, "threshold_n_star");
  return 2.0 * std::log(N) / log_base_a(pp) + 1.0;
}

double psi(const ProbPair& pp) { return std::log(pp.p2() / (1.0 - pp.p2())) / log_base_a(pp); }

double sigma2(const ProbPair& pp) {
  if (pp.p2() == 0.5) return 0.0;
  const double l = std::log(1.0 / pp.p2() - 1.0) / log_base_a(pp);
  return 2.0 * pp.p1() * (1.0 - pp.p1()) * l * l;
}

double epsilon_N(double N) {
  if (!(N > 1.0)) throw DomainError("epsilon_N: requires N > 1");
  const double ln = std::log(N);
  const double lln = std::log(ln);
  return lln * lln / ln;
}

double limit_f(const ProbPair& pp, double c) {
  if (pp.p2() == 0.5) {
    throw DomainError("limit_f: sigma^2 = 0 at p2 = 1/2; the threshold is sharp there (use threshold_n_star)");
  }
  return normal_cdf(-c / std::sqrt(sigma2(pp)));
}

double tnor_cdf(double x, double mu, double s2) {
  if (!(s2 > 0.0)) throw DomainError("tnor_cdf: variance must be positive");
  if (x < 0.0) return 0.0;
  return normal_cdf((x - mu) / std::sqrt(s2));
}

double log_falling_factorial(std::int64_t N, std::int64_t n) {
  if (n < 0 || n > N) throw DomainError("falling factorial requires 0 <= n <= N");
  if (n <= 4096) {
    double s = 0.0;
    for (std::int64_t i = 0; i < n; ++i) s += std::log(static_cast<double>(N - i));
    return s;
  }
  return std::lgamma(static_cast<double>(N) + 1.0) - std::lgamma(static_cast<double>(N - n) + 1.0);
}

double log_poisson_mean_mu(std::int64_t N, std::int64_t n) {
  if (n < 1 || n > N) throw DomainError("poisson_mean_mu requires 1 <= n <= N");
  return log_falling_factorial(N, n) - static_cast<double>(pair_count(n)) * std::numbers::ln2;
}

double poisson_mean_mu(std::int64_t N, std::int64_t n) {
  if (n <= 12 && n >= 1 && n <= N) return poisson_mean_mu_exact(N, n);
  return std::exp(log_poisson_mean_mu(N, n));
}

double poisson_mean_mu_exact(std::int64_t N, std::int64_t n) {
  namespace mp = boost::multiprecision;
  if (n < 1 || n > N) throw DomainError("poisson_mean_mu requires 1 <= n <= N");
  if (n > 12) throw SizeLimitError("exact poisson_mean_mu supports n <= 12");
  mp::cpp_int num = 1;
  for (std::int64_t i = 0; i < n; ++i) num *= (N - i);
  mp::cpp_bin_float_100 q(num);
  q = mp::ldexp(q, -static_cast<int>(pair_count(n)));
  return q.convert_to<double>();
}

double expected_copies_log(std::int64_t N, std::int64_t n, std::int64_t m, double p, std::uint64_t aut) {
  const std::int64_t pairs = pair_count(n);
  if (m < 0 || m > pairs) throw DomainError("expected_copies_log: m outside [0, C(n,2)]");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("expected_copies_log: p must lie in (0, 1)");
  if (aut == 0) throw DomainError("expected_copies_log: |Aut| must be positive");
  return log_falling_factorial(N, n) + static_cast<double>(m) * std::log(p) +
         static_cast<double>(pairs - m) * std::log1p(-p) - std::log(static_cast<double>(aut));
}

const char* to_string(Containment c) noexcept {
  switch (c) {
    case Containment::ZeroWHP: return "zero_whp";
    case Containment::OneWHP: return "one_whp";
    case Containment::Indeterminate: return "indeterminate";
  }
  return "?";
}

FixedPatternPrediction predict_fixed_pattern_containment(std::int64_t n, std::int64_t m, std::int64_t N,
                                                         const ProbPair& pp) {
  if (n < 1 || m < 0 || m > pair_count(n)) throw DomainError("predict: requires n >= 1 and 0 <= m <= C(n,2)");
  if (N < 3) throw DomainError("predict: requires N >= 3");
  FixedPatternPrediction out{};
  out.psi = psi(pp);
  out.delta_m = (static_cast<double>(m) - static_cast<double>(pair_count(n)) * pp.p1()) / (static_cast<double>(n) / 2.0);
  out.c_N = static_cast<double>(n) - threshold_n_star(pp, static_cast<double>(N));
  out.eps_N = epsilon_N(static_cast<double>(N));
  out.score = out.psi * out.delta_m - out.c_N;
  if (out.score >= out.eps_N) {
    out.verdict = Containment::OneWHP;
  } else if (out.score <= -out.eps_N) {
    out.verdict = Containment::ZeroWHP;
  } else {
    out.verdict = Containment::Indeterminate;
  }
  return out;
}

ThresholdReport threshold_report(const ProbPair& pp, double N) {
  require_N(N, 2.0, "threshold");
  return {pp.p1(), pp.p2(), N, base_a(pp), threshold_n_star(pp, N), sigma2(pp), psi(pp), epsilon_N(N)};
}

double phat(const ProbPair& pp) {
  const double a = pp.p1() * pp.p2();
  return a / (a + (1.0 - pp.p1()) * (1.0 - pp.p2()));
}

BFamily::BFamily(const ProbPair& pp) : p1_(pp.p1()), p2_(pp.p2()), phat_(theory::phat(pp)) {}

double BFamily::log_b0(double p) const {
  return xlog_ratio(p, p1_ * p2_) + xlog_ratio(1.0 - p, (1.0 - p1_) * (1.0 - p2_));
}

// A relative entropy, so rounding below zero is clamped.
double BFamily::log_bi(double p, double pi) {
  return std::max(0.0, xlog_ratio(p, pi) + xlog_ratio(1.0 - p, 1.0 - pi));
}

double BFamily::log_b(int which, double p) const {
  switch (which) {
    case 0: return log_b0(p);
    case 1: return log_b1(p);
    case 2: return log_b2(p);
  }
  throw DomainError("BFamily::log_b: index must be 0, 1 or 2");
}

double BFamily::b0(double p) const { return std::exp(log_b0(p)); }
double BFamily::b1(double p) const { return std::exp(log_b1(p)); }
double BFamily::b2(double p) const { return std::exp(log_b2(p)); }

double BFamily::g(double p) const { return std::max({log_b0(p), 2.0 * log_b1(p), 2.0 * log_b2(p)}); }

double g_minimizer_p0(const ProbPair& pp, double tol) {
  const BFamily fam(pp);
  return golden_min([&](double p) { return fam.g(p); }, 0.0, 1.0, tol);
}

double x0_from_log_b(double log_b0, double N) {
  const double lb = std::log(N) / log_b0;  // log_{b0} N
  return 4.0 * lb - 2.0 * std::log(lb) / log_b0 - 2.0 * std::log(4.0 / kE) / log_b0 + 1.0;
}

double x0_N(const ProbPair& pp, double p, double N) {
  require_N(N, 1.0 + 1e-12, "x0_N");
  return x0_from_log_b(BFamily(pp).log_b0(p), N);
}

double xi_from_log_b(double log_b, double N) {
  if (!(N >= 1.0)) throw DomainError("xi_N: requires N >= 1");
  if (!(log_b >= 0.0)) throw DomainError("xi_N: requires b >= 1");
  const double target = 1.0 + std::log(N);  // ln(e N)
  if (log_b == 0.0) return kE * N;
  // ln x + (x-1)/2 ln b - ln(eN) is strictly increasing in x; F(1) < 0.
  auto F = [&](double x) { return std::log(x) + 0.5 * (x - 1.0) * log_b - target; };
  double lo = 1.0;
  double hi = 2.0;
  while (F(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  return bisect_root(F, lo, hi);
}

double xi_N(double b, double N) {
  if (!(b >= 1.0)) throw DomainError("xi_N: requires b >= 1");
  return xi_from_log_b(b == 1.0 ? 0.0 : std::log(b), N);
}

double xi_asymptotic(double b, double N) {
  if (!(b > 1.0)) throw DomainError("xi_asymptotic: requires b > 1");
  const double lnb = std::log(b);
  const double lb = std::log(N) / lnb;
  return 2.0 * lb - 2.0 * std::log(lb) / lnb - 2.0 * std::log(2.0 / kE) / lnb + 1.0;
}

double envelope(const BFamily& fam, double p, double N) {
  const double x0 = x0_from_log_b(fam.log_b0(p), N);
  const double x1 = xi_from_log_b(fam.log_b1(p), N);
  const double x2 = xi_from_log_b(fam.log_b2(p), N);
  return std::min({x0, x1, x2});
}

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::A: return "A";
    case Region::B1: return "B1";
    case Region::B2: return "B2";
  }
  return "?";
}

RegionInfo classify_region(const ProbPair& pp) {
  const BFamily fam(pp);
  const double ph = fam.phat();
  const double l0 = fam.log_b0(ph);
  const double l1 = 2.0 * fam.log_b1(ph);
  const double l2 = 2.0 * fam.log_b2(ph);
  if (l0 > std::max(l1, l2)) return {Region::A, ph, false};

  auto root_for = [&](int i) {
    const double pi = i == 1 ? fam.p1() : fam.p2();
    auto h = [&](double p) { return 2.0 * fam.log_b(i, p) - fam.log_b0(p); };
    return bisect_root(h, ph, pi);
  };
  const bool v1 = l0 <= l1;
  const bool v2 = l0 <= l2;
  if (v1 && v2) {
    const double r1 = root_for(1);
    const double r2 = root_for(2);
    return fam.g(r1) <= fam.g(r2) ? RegionInfo{Region::B1, r1, true} : RegionInfo{Region::B2, r2, true};
  }
  return v1 ? RegionInfo{Region::B1, root_for(1), false} : RegionInfo{Region::B2, root_for(2), false};
}

McisLocationReport n_N(const ProbPair& pp, double N) {
  require_N(N, 16.0, "n_N (requires N >= 16)");
  const BFamily fam(pp);
  auto env = [&](double p) { return envelope(fam, p, N); };

  // Ternary search on the quasi-concave envelope.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-9) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (env(m1) < env(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  double p_opt = 0.5 * (lo + hi);
  double best = env(p_opt);

  // Dense grid as a safety net against flat stretches at double precision.
  constexpr int kGrid = 10000;
  int grid_best = -1;
  double grid_val = best;
  for (int k = 0; k <= kGrid; ++k) {
    const double v = env(static_cast<double>(k) / kGrid);
    if (v > grid_val) {
      grid_val = v;
      grid_best = k;
    }
  }
  if (grid_best >= 0) {
    const double c = static_cast<double>(grid_best) / kGrid;
    const double p = golden_min([&](double q) { return -env(q); }, std::max(0.0, c - 1.0 / kGrid),
                                std::min(1.0, c + 1.0 / kGrid), 1e-10);
    if (env(p) >= grid_val) {
      p_opt = p;
    } else {
      p_opt = c;
    }
    best = env(p_opt);
  }

  const RegionInfo region = classify_region(pp);
  McisLocationReport r{};
  r.p1 = pp.p1();
  r.p2 = pp.p2();
  r.N = N;
  r.region = region.region;
  r.ambiguous = region.ambiguous;
  r.p_opt = p_opt;
  r.p0 = region.p0;
  r.phat = fam.phat();
  r.g_p0 = fam.g(region.p0);
  r.x0 = x0_from_log_b(fam.log_b0(p_opt), N);
  r.x1 = xi_from_log_b(fam.log_b1(p_opt), N);
  r.x2 = xi_from_log_b(fam.log_b2(p_opt), N);
  r.n_N = best;
  r.eps_N = epsilon_N(N);
  r.interval_lo = static_cast<std::int64_t>(std::floor(best - r.eps_N));
  r.interval_hi = static_cast<std::int64_t>(std::floor(best + r.eps_N));
  return r;
}

std::pair<std::int64_t, std::int64_t> two_point_interval(const ProbPair& pp, double N) {
  const auto r = n_N(pp, N);
  return {r.interval_lo, r.interval_hi};
}

std::vector<std::vector<std::pair<double, double>>> threshold_curve(double N, double n, int columns) {
  if (!(n > 1.0)) throw DomainError("threshold_curve: requires n > 1");
  require_N(N, 2.0, "threshold_curve");
  const double target = 2.0 * std::log(N) / (n - 1.0);  // required ln a
  std::vector<std::vector<std::pair<double, double>>> out;
  std::vector<std::pair<double, double>> below, above;
  auto flush = [&] {
    if (!below.empty()) out.push_back(std::move(below));
    if (!above.empty()) out.push_back(std::move(above));
    below.clear();
    above.clear();
  };
  for (int c = 1; c <= columns; ++c) {
    const double x = static_cast<double>(c) / (columns + 1);
    // ln a(x, y) is convex in y with minimum -x ln x - (1-x) ln(1-x) at y = x,
    // and tends to +infinity at both ends.
    if (-x * std::log(x) - (1.0 - x) * std::log1p(-x) >= target) {
      flush();
      continue;
    }
    // Roots can sit within 1e-60 of 0 or 1, so solve for t = ln y below the
    // diagonal and s = ln(1 - y) above it.
    auto Fb = [&](double t) { return -x * t - (1.0 - x) * std::log1p(-std::exp(t)) - target; };
    auto Fa = [&](double s) { return -x * std::log1p(-std::exp(s)) - (1.0 - x) * s - target; };
    auto outward = [](auto& F, double start) {
      double step = 1.0;
      while (F(start - step) < 0.0) step *= 2.0;
      return bisect_root(F, start - step, start);
    };
    const double y_lo = std::exp(outward(Fb, std::log(x)));
    const double y_hi = -std::expm1(outward(Fa, std::log1p(-x)));
    if (y_lo > 0.0) below.emplace_back(x, y_lo);
    if (y_hi < 1.0 - 1e-12) above.emplace_back(x, y_hi);
  }
  flush();
  return out;
}

}  // namespace rgiso::theory
