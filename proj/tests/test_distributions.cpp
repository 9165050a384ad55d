#include <cmath>
#include <set>

#include "doctest.h"
#include "mixreg/dist.hpp"
#include "mixreg/kernel.hpp"
#include "mixreg/quadrature.hpp"
#include "mixreg/rng.hpp"
#include "mixreg/special.hpp"

using namespace mixreg;

TEST_CASE("standard normal pdf/cdf closed-form values") {
  CHECK(norm_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  // classical table values
  CHECK(norm_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(norm_cdf(-1.0) + norm_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normal quantile inverts the cdf to near machine precision") {
  for (double p : {1e-10, 1e-4, 0.02, 0.3, 0.5, 0.7, 0.975, 0.9999, 1.0 - 1e-10}) {
    double x = norm_quantile(p);
    CHECK(norm_cdf(x) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(norm_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK_THROWS_AS(norm_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(norm_quantile(1.0), std::domain_error);
}

TEST_CASE("gaussian tail bounds bracket the true tail for t > 1") {
  for (double t : {1.1, 1.5, 2.0, 3.0, 5.0}) {
    double tail = 1.0 - norm_cdf(t);
    CHECK(norm_tail_lower_bound(t) <= tail);
    CHECK(tail <= norm_tail_upper_bound(t));
  }
}

TEST_CASE("seed derivation separates named and counter streams") {
  CHECK(derive_seed(42, "design") == derive_seed(42, "design"));
  CHECK(derive_seed(42, "design") != derive_seed(42, "labels"));
  CHECK(derive_seed(42, "design") != derive_seed(43, "design"));
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 100; ++r) seen.insert(derive_seed(7, r));
  CHECK(seen.size() == 100);
}

TEST_CASE("rng streams are reproducible and roughly standard normal") {
  Rng a(123), b(123), c(124);
  bool identical = true, all_same = true;
  for (int i = 0; i < 1000; ++i) {
    double va = a.normal();
    identical &= (va == b.normal());
    all_same &= (va == c.normal());
  }
  CHECK(identical);
  CHECK_FALSE(all_same);

  Rng r(99);
  const int n = 200000;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double z = r.normal();
    mean += z;
    m2 += z * z;
  }
  mean /= n;
  m2 /= n;
  CHECK(std::abs(mean) < 0.01);
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("single gaussian distribution: pdf, cdf, quantile, moments") {
  auto g = Distribution::gaussian(2.0, 9.0);
  CHECK(g.mean() == doctest::Approx(2.0));
  CHECK(g.variance() == doctest::Approx(9.0));
  CHECK(g.pdf(2.0) == doctest::Approx(norm_pdf(0.0) / 3.0).epsilon(1e-14));
  CHECK(g.cdf(2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.quantile(g.cdf(4.5)) == doctest::Approx(4.5).epsilon(1e-9));
  CHECK(g.symmetric() == false);  // not centered at 0
  CHECK(Distribution::gaussian(0.0, 1.0).symmetric());
}

TEST_CASE("gaussian mixture: analytic moments and quantile round trip") {
  auto mix = Distribution::gaussian_mixture({0.3, 0.7}, {-1.0, 2.0}, {1.0, 4.0});
  double mu = 0.3 * (-1.0) + 0.7 * 2.0;
  double ex2 = 0.3 * (1.0 + 1.0) + 0.7 * (4.0 + 4.0);
  CHECK(mix.mean() == doctest::Approx(mu).epsilon(1e-14));
  CHECK(mix.variance() == doctest::Approx(ex2 - mu * mu).epsilon(1e-14));
  // cdf is the mixture of the component cdfs
  CHECK(mix.cdf(0.5) ==
        doctest::Approx(0.3 * norm_cdf(1.5) + 0.7 * norm_cdf(-0.75)).epsilon(1e-14));
  for (double u : {0.05, 0.5, 0.95}) {
    CHECK(mix.cdf(mix.quantile(u)) == doctest::Approx(u).epsilon(1e-9));
  }
  CHECK_FALSE(mix.symmetric());
  auto sym = Distribution::gaussian_mixture({0.5, 0.5}, {-0.7, 0.7}, {2.0, 2.0});
  CHECK(sym.symmetric());
  CHECK_THROWS_AS(Distribution::gaussian_mixture({0.5, 0.6}, {0.0, 0.0}, {1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("mixture sampling matches analytic moments") {
  auto mix = Distribution::gaussian_mixture({0.4, 0.6}, {-2.0, 1.0}, {0.5, 2.0});
  Rng rng(2024);
  const int n = 200000;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = mix.sample(rng);
    mean += v;
    m2 += v * v;
  }
  mean /= n;
  m2 = m2 / n - mean * mean;
  CHECK(std::abs(mean - mix.mean()) < 0.02);
  CHECK(m2 == doctest::Approx(mix.variance()).epsilon(0.02));
}

TEST_CASE("triangular kernel: exact density, antiderivative and second moment") {
  Kernel k = Kernel::triangular();
  CHECK(k.density(0.0) == 1.0);
  CHECK(k.density(0.5) == doctest::Approx(0.5));
  CHECK(k.density(-0.5) == doctest::Approx(0.5));
  CHECK(k.density(1.5) == 0.0);
  CHECK(k.cdf(-1.0) == 0.0);
  CHECK(k.cdf(1.0) == 1.0);
  CHECK(k.cdf(0.0) == doctest::Approx(0.5));
  CHECK(k.cdf(0.5) == doctest::Approx(0.875));
  CHECK(k.cdf(-0.5) == doctest::Approx(0.125));
  // the stated antiderivative differentiates back to the density
  double h = 1e-6;
  for (double t : {-0.8, -0.3, 0.2, 0.7}) {
    CHECK((k.cdf(t + h) - k.cdf(t - h)) / (2 * h) == doctest::Approx(k.density(t)).epsilon(1e-6));
  }
  // second moment of the triangular density is 1/6 (quadrature cross-check)
  double m2 = simpson([&](double t) { return t * t * k.density(t); }, -1.0, 1.0, 2001);
  CHECK(m2 == doctest::Approx(k.second_moment()).epsilon(1e-10));
  CHECK(Kernel::gaussian().second_moment() == doctest::Approx(1.0));
}

TEST_CASE("bandwidth rules: stated formula value and decay diagnostics") {
  // b_100 = sqrt(1 + 4 * 0.25) * (4/300)^{1/5}
  double expected = std::sqrt(2.0) * std::pow(4.0 / 300.0, 0.2);
  CHECK(BandwidthRule::paper().value(100) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(BandwidthRule::paper(0.3).value(100) ==
        doctest::Approx(std::sqrt(1.0 + 4.0 * 0.3 * 0.7) * std::pow(4.0 / 300.0, 0.2)));
  CHECK(BandwidthRule::fixed(0.25).value(10) == doctest::Approx(0.25));
  CHECK(BandwidthRule::power(2.0, 0.3).value(100) ==
        doctest::Approx(2.0 * std::pow(100.0, -0.3)));
  CHECK_THROWS_AS(BandwidthRule::fixed(0.0).value(10), std::domain_error);

  CHECK_FALSE(BandwidthRule::fixed(0.1).validate().empty());
  CHECK_FALSE(BandwidthRule::paper().validate().empty());  // n^{-1/5}: sqrt(n) b^2 check fails
  CHECK(BandwidthRule::power(1.0, 0.3).validate().empty());
}

TEST_CASE("simpson quadrature: exactness and input checks") {
  CHECK(simpson([](double x) { return x * x; }, 0.0, 1.0, 3) == doctest::Approx(1.0 / 3.0));
  CHECK(simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1001) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 4), std::invalid_argument);
  CHECK(simpson_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}
