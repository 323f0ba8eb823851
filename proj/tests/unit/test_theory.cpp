#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rgiso/errors.hpp"
#include "rgiso/theory.hpp"

using namespace rgiso;
using namespace rgiso::theory;

namespace {
constexpr double kE = std::numbers::e;
}

TEST_CASE("base_a") {
  CHECK(base_a(ProbPair(0.3, 0.5)) == 2.0);
  CHECK(base_a(ProbPair(0.5, 0.3)) == doctest::Approx(1.0 / std::sqrt(0.21)).epsilon(1e-12));
  CHECK(base_a(ProbPair(0.5, 0.7)) == doctest::Approx(base_a(ProbPair(0.5, 0.3))).epsilon(1e-12));
  for (int i = 1; i < 50; ++i)
    for (int j = 1; j < 50; ++j) {
      const ProbPair pp(i / 50.0, j / 50.0);
      CHECK(base_a(pp) > 1.0);
      CHECK(log_base_a(pp) > 0.0);
      CHECK(std::log(base_a(pp)) == doctest::Approx(log_base_a(pp)).epsilon(1e-12));
    }
}

TEST_CASE("threshold_n_star") {
  CHECK(threshold_n_star(ProbPair(0.5, 0.5), 150) == doctest::Approx(15.4576).epsilon(1e-5));
  CHECK(threshold_n_star(ProbPair(0.5, 0.5), 2) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(threshold_n_star(ProbPair(0.5, 0.3), 150) == doctest::Approx(13.8425).epsilon(1e-5));
  CHECK_THROWS_AS(threshold_report(ProbPair(0.5, 0.5), 1), DomainError);
}

TEST_CASE("sigma2 and limit_f") {
  CHECK(sigma2(ProbPair(0.3, 0.5)) == 0.0);
  CHECK(sigma2(ProbPair(0.3, 0.2)) > 0.0);
  // Complementing both graphs leaves a and sigma^2 unchanged.
  CHECK(sigma2(ProbPair(0.3, 0.2)) == doctest::Approx(sigma2(ProbPair(0.7, 0.8))).epsilon(1e-12));
  CHECK(base_a(ProbPair(0.3, 0.2)) == doctest::Approx(base_a(ProbPair(0.7, 0.8))).epsilon(1e-12));
  CHECK_THROWS_AS(limit_f(ProbPair(0.3, 0.5), 0.0), DomainError);
  const ProbPair pp(0.4, 0.2);
  CHECK(limit_f(pp, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  const double s = std::sqrt(sigma2(pp));
  CHECK(limit_f(pp, s) == doctest::Approx(0.158655253931457).epsilon(1e-12));
  CHECK(limit_f(pp, 50.0) < 1e-12);
  CHECK(limit_f(pp, -50.0) > 1 - 1e-12);
  double prev = 1.0;
  for (double c = -5; c <= 5; c += 0.25) {
    const double f = limit_f(pp, c);
    CHECK(f <= prev);
    prev = f;
  }
}

TEST_CASE("normal cdf accuracy") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(2.0) == doctest::Approx(0.977249868051821).epsilon(1e-14));
  CHECK(normal_cdf(-3.0) == doctest::Approx(0.00134989803163009).epsilon(1e-12));
}

TEST_CASE("tnor_cdf") {
  CHECK(tnor_cdf(-0.1, 0.3, 1.0) == 0.0);
  CHECK(tnor_cdf(0.0, 0.0, 1.0) == 0.5);
  CHECK(tnor_cdf(1.0, -1.0, 1.0) == doctest::Approx(0.977250).epsilon(1e-6));
  CHECK_THROWS_AS(tnor_cdf(0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("poisson_mean_mu") {
  CHECK(poisson_mean_mu(5, 1) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(poisson_mean_mu(3, 3) == doctest::Approx(0.75).epsilon(1e-14));
  // (30)_10 = 109027350432000 exactly.
  const double exact = 109027350432000.0 / std::ldexp(1.0, 45);
  CHECK(poisson_mean_mu(30, 10) == doctest::Approx(exact).epsilon(1e-14));
  CHECK(poisson_mean_mu_exact(30, 10) == exact);
  CHECK(poisson_mean_mu(30, 10) == doctest::Approx(3.0987).epsilon(1e-4));
  CHECK(std::exp(log_poisson_mean_mu(1000, 20)) == doctest::Approx(poisson_mean_mu(1000, 20)).epsilon(1e-12));
  CHECK_THROWS_AS(poisson_mean_mu(3, 4), DomainError);
}

TEST_CASE("expected_copies_log") {
  CHECK(expected_copies_log(5, 2, 1, 0.5, 2) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(expected_copies_log(30, 10, 45, 0.5, 1) == doctest::Approx(std::log(poisson_mean_mu(30, 10))).epsilon(1e-12));
  CHECK(expected_copies_log(40, 7, 9, 0.3, 1) - expected_copies_log(40, 7, 9, 0.3, 6) ==
        doctest::Approx(std::log(6.0)).epsilon(1e-12));
  CHECK(std::isfinite(expected_copies_log(1000000, 500, 60000, 0.5, 1)));
}

TEST_CASE("predict_fixed_pattern_containment") {
  const auto half = predict_fixed_pattern_containment(14, 46, 150, ProbPair(0.5, 0.5));
  CHECK(half.psi == 0.0);
  const auto ind = predict_fixed_pattern_containment(14, 46, 150, ProbPair(0.5, 0.3));
  CHECK(ind.score == doctest::Approx(-0.234).epsilon(0.01));
  CHECK(ind.eps_N == doctest::Approx(0.5183).epsilon(1e-3));
  CHECK(ind.verdict == Containment::Indeterminate);
  const int n = static_cast<int>(std::lround(threshold_n_star(ProbPair(0.5, 0.5), 150) + 10));
  const auto zero = predict_fixed_pattern_containment(n, n * (n - 1) / 4, 150, ProbPair(0.5, 0.5));
  CHECK(zero.verdict == Containment::ZeroWHP);
  CHECK(predict_fixed_pattern_containment(10, 23, 150, ProbPair(0.5, 0.5)).verdict == Containment::OneWHP);
}

TEST_CASE("phat and the b family") {
  CHECK(phat(ProbPair(0.5, 0.5)) == 0.5);
  CHECK(phat(ProbPair(0.3, 0.7)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phat(ProbPair(0.2, 0.2)) == doctest::Approx(1.0 / 17.0).epsilon(1e-12));
  const BFamily half(ProbPair(0.5, 0.5));
  CHECK(half.b0(0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(half.b1(0.5) == 1.0);
  CHECK(half.b2(0.5) == 1.0);
  CHECK(half.g(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(half.b0(0.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(half.b0(1.0) == doctest::Approx(4.0).epsilon(1e-15));
  for (int k = 1; k <= 9; ++k) {
    const double p = k / 10.0;
    const ProbPair pp(p, p);
    const BFamily fam(pp);
    CHECK(fam.b0(fam.phat()) == doctest::Approx(1.0 / (p * p + (1 - p) * (1 - p))).epsilon(1e-12));
    CHECK(fam.log_b0(fam.phat()) > 2 * fam.log_b1(fam.phat()));
  }
}

TEST_CASE("b family bounds and g convexity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int r = 0; r < 100; ++r) {
    const ProbPair pp(u(rng), u(rng));
    const BFamily fam(pp);
    CHECK(fam.b1(pp.p1()) == 1.0);
    CHECK(fam.b2(pp.p2()) == 1.0);
    for (int i = 0; i <= 200; ++i) {
      const double p = i / 200.0;
      CHECK(fam.b0(p) > 1.0);
      CHECK(fam.b1(p) >= 1.0);
      CHECK(fam.b2(p) >= 1.0);
      if (i > 0 && i < 200) {
        const double a = (i - 1) / 200.0, b = (i + 1) / 200.0;
        CHECK(fam.g(p) <= 0.5 * (fam.g(a) + fam.g(b)) + 1e-12);
      }
    }
  }
}

TEST_CASE("g_minimizer_p0") {
  CHECK(g_minimizer_p0(ProbPair(0.5, 0.5)) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(g_minimizer_p0(ProbPair(0.3, 0.7)) == doctest::Approx(0.5).epsilon(1e-8));
  const ProbPair pp(0.2, 0.65);
  const BFamily fam(pp);
  const double p0 = g_minimizer_p0(pp);
  CHECK(fam.g(p0) <= fam.g(p0 + 1e-6));
  CHECK(fam.g(p0) <= fam.g(p0 - 1e-6));
}

TEST_CASE("x0_N") {
  CHECK(x0_N(ProbPair(0.5, 0.5), 0.5, 1000) == doctest::Approx(33.1146).epsilon(1e-5));
  // Affine in k minus a log k correction at b0 = 2: x0(2^k) = 4k - 2 log2 k - 2 log2(4/e) + 1.
  for (int k = 5; k <= 40; k += 5) {
    const double expected = 4.0 * k - 2.0 * std::log2(static_cast<double>(k)) - 2.0 * std::log2(4.0 / kE) + 1.0;
    CHECK(x0_N(ProbPair(0.5, 0.5), 0.5, std::ldexp(1.0, k)) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(x0_from_log_b(0.9, 1e8) < x0_from_log_b(0.8, 1e8));
}

TEST_CASE("xi_N") {
  CHECK(xi_N(1.0, 10) == 10 * kE);
  CHECK(xi_N(2.0, 20 / kE) == doctest::Approx(5.0).epsilon(1e-9));
  const double x = xi_N(2.0, 1000);
  CHECK(x == doctest::Approx(15.85).epsilon(1e-3));
  CHECK(std::abs(x * std::pow(2.0, (x - 1) / 2) - kE * 1000) / (kE * 1000) <= 1e-9);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ub(1.05, 10.0), ue(1.0, 9.0);
  for (int i = 0; i < 1000; ++i) {
    const double b = ub(rng), N = std::pow(10.0, ue(rng));
    const double r = xi_N(b, N);
    CHECK(std::abs(r * std::pow(b, (r - 1) / 2) - kE * N) / (kE * N) <= 1e-9);
  }
  CHECK_THROWS_AS(xi_N(0.5, 10), DomainError);
}

TEST_CASE("xi_asymptotic") {
  const double d6 = std::abs(xi_N(2, 1e6) - xi_asymptotic(2, 1e6));
  const double d9 = std::abs(xi_N(2, 1e9) - xi_asymptotic(2, 1e9));
  const double d12 = std::abs(xi_N(2, 1e12) - xi_asymptotic(2, 1e12));
  CHECK(d6 <= 0.5);
  CHECK(d9 < d6);
  CHECK(d12 < d9);
  const double k = 30;
  CHECK(xi_asymptotic(kE, std::exp(k)) ==
        doctest::Approx(2 * k - 2 * std::log(k) - 2 * std::log(2.0) + 2 + 1).epsilon(1e-12));
}

TEST_CASE("epsilon_N and the interval") {
  CHECK(epsilon_N(1000) == doctest::Approx(0.54066).epsilon(1e-3));
  CHECK(epsilon_N(std::exp(kE)) == doctest::Approx(1.0 / kE).epsilon(1e-12));
  const double l16 = std::log(16.0);
  CHECK(epsilon_N(16) == doctest::Approx(std::log(l16) * std::log(l16) / l16).epsilon(1e-15));
  const auto rep = n_N(ProbPair(0.5, 0.5), 1000);
  CHECK(rep.interval_lo == static_cast<std::int64_t>(std::floor(rep.n_N - rep.eps_N)));
  CHECK(rep.interval_hi == static_cast<std::int64_t>(std::floor(rep.n_N + rep.eps_N)));
  CHECK(rep.interval_hi - rep.interval_lo <= 1);
  CHECK_THROWS_AS(n_N(ProbPair(0.5, 0.5), 15), DomainError);
}

TEST_CASE("n_N and regions") {
  const auto half = n_N(ProbPair(0.5, 0.5), 1000);
  CHECK(half.region == Region::A);
  CHECK(half.p_opt == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(half.n_N == doctest::Approx(x0_N(ProbPair(0.5, 0.5), 0.5, 1000)).epsilon(1e-9));

  const auto b1 = n_N(ProbPair(0.5, 0.05), 10000);
  const auto b2 = n_N(ProbPair(0.05, 0.5), 10000);
  CHECK(b1.region == Region::B1);
  CHECK(b2.region == Region::B2);
  CHECK(b1.n_N == doctest::Approx(b2.n_N).epsilon(1e-9));

  const BFamily fam(ProbPair(0.5, 0.05));
  CHECK(fam.log_b0(fam.phat()) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(2 * fam.log_b1(fam.phat()) == doctest::Approx(0.989).epsilon(1e-3));

  // n_N is the max of the min-envelope: no grid point beats it.
  for (const ProbPair pp : {ProbPair(0.5, 0.5), ProbPair(0.3, 0.8), ProbPair(0.5, 0.05), ProbPair(0.9, 0.15)}) {
    const auto rep = n_N(pp, 5000);
    const BFamily f(pp);
    for (int i = 0; i <= 2000; ++i) CHECK(envelope(f, i / 2000.0, 5000) <= rep.n_N + 1e-7);
    CHECK(rep.n_N == doctest::Approx(std::min({rep.x0, rep.x1, rep.x2})).epsilon(1e-12));
  }
}

TEST_CASE("region A puts p_opt at phat and x0 below the other branches") {
  for (const ProbPair pp : {ProbPair(0.3, 0.3), ProbPair(0.6, 0.4), ProbPair(0.2, 0.35)}) {
    REQUIRE(classify_region(pp).region == Region::A);
    const auto rep = n_N(pp, 1e6);
    CHECK(rep.p_opt == doctest::Approx(phat(pp)).epsilon(1e-6));
    CHECK(rep.x0 < std::min(rep.x1, rep.x2));
  }
}

TEST_CASE("first-order law") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int r = 0; r < 20; ++r) {
    const ProbPair pp(u(rng), u(rng));
    const double g0 = BFamily(pp).g(g_minimizer_p0(pp));
    for (int e = 3; e <= 12; ++e) {
      const double N = std::pow(10.0, e);
      const double dev = std::abs(n_N(pp, N).n_N - 4 * std::log(N) / g0) / std::log(std::log(N));
      CHECK(dev <= 25.0);
    }
  }
}

TEST_CASE("region swap symmetry") {
  for (int i = 1; i < 20; ++i)
    for (int j = 1; j < 20; ++j) {
      const Region a = classify_region(ProbPair(i / 20.0, j / 20.0)).region;
      const Region b = classify_region(ProbPair(j / 20.0, i / 20.0)).region;
      const Region mirrored = a == Region::A ? Region::A : (a == Region::B1 ? Region::B2 : Region::B1);
      CHECK(b == mirrored);
    }
}

TEST_CASE("threshold curve points solve n* = n") {
  const double N = 150, n = 10;
  for (const auto& seg : threshold_curve(N, n, 200)) {
    CHECK(seg.size() >= 2);
    for (auto [x, y] : seg) {
      REQUIRE(y > 0.0);
      REQUIRE(y < 1.0);
      CHECK(threshold_n_star(ProbPair(x, y), N) == doctest::Approx(n).epsilon(1e-4));
    }
  }
}
