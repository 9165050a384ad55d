#include <cmath>
#include <numeric>

#include "doctest.h"
#include "mixreg/simulate.hpp"

using namespace mixreg;

namespace {

const Distribution kStdNormal = Distribution::gaussian(0.0, 1.0);

}  // namespace

TEST_CASE("two-component draw puts about n*p points on the sloped band") {
  // p* = 0.7, alpha* = 2, beta* = 1, X ~ N(2, 3^2), n = 200
  Vartheta truth{0.7, 2.0, 1.0};
  auto design = Distribution::gaussian(2.0, 9.0);
  Sample s = simulate(200, truth, kStdNormal, kStdNormal, design, 11);
  REQUIRE(s.size() == 200);
  REQUIRE(s.u.has_value());

  int on_band = std::accumulate(s.u->begin(), s.u->end(), 0);
  CHECK(on_band > 110);  // binomial(200, 0.7): well inside a 5-sigma band
  CHECK(on_band < 170);

  // labeled points actually sit on their own line: residuals are N(0,1)-sized
  for (std::size_t i = 0; i < s.size(); ++i) {
    double r = (*s.u)[i] ? s.y[i] - (2.0 + s.x[i]) : s.y[i];
    CHECK(std::abs(r) < 6.0);
  }
}

TEST_CASE("degenerate mixing probabilities") {
  CHECK_THROWS_AS(simulate(10, Vartheta{1.0, 0.0, 1.0}, kStdNormal, kStdNormal, kStdNormal, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate(10, Vartheta{0.5, 0.0, 0.0}, kStdNormal, kStdNormal, kStdNormal, 1),
                  std::invalid_argument);
  // p -> 1 - delta: every point lands on the sloped band
  Sample s = simulate(500, Vartheta{1.0 - 1e-12, 0.0, 1.0}, kStdNormal, kStdNormal,
                      kStdNormal, 5);
  for (auto u : *s.u) CHECK(u == 1);
}

TEST_CASE("fixed seed reproduces the sample bit for bit") {
  Vartheta truth{0.7, 0.0, 1.0};
  auto design = Distribution::gaussian(0.0, 9.0);
  Sample a = simulate(100, truth, kStdNormal, kStdNormal, design, 42);
  Sample b = simulate(100, truth, kStdNormal, kStdNormal, design, 42);
  Sample c = simulate(100, truth, kStdNormal, kStdNormal, design, 43);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(*a.u == *b.u);
  CHECK(a.y != c.y);
}

TEST_CASE("asymmetric error law: symmetry at lambda = 1/2 only, mean zero always") {
  CHECK(asymmetric_error_dist(0.5).symmetric());
  CHECK_FALSE(asymmetric_error_dist(0.6).symmetric());
  // lambda (-0.7) + (1 - lambda)(0.7 lambda / (1 - lambda)) = 0 for all lambda
  for (double lam : {0.3, 0.5, 0.55, 0.6, 0.8}) {
    CHECK(std::abs(asymmetric_error_dist(lam).mean()) < 1e-15);
  }
  CHECK_THROWS_AS(asymmetric_error_dist(0.0), std::domain_error);
  CHECK_THROWS_AS(asymmetric_error_dist(1.0), std::domain_error);
}

TEST_CASE("asymmetric error law: empirical moments match the analytic ones") {
  // each component has variance 1/2, so the mixture variance is
  // 1/2 + 0.49 lambda / (1 - lambda); ~0.99 at lambda = 1/2
  double lam = 0.6;
  auto d = asymmetric_error_dist(lam);
  double var_expected = 0.5 + 0.49 * lam / (1.0 - lam);
  CHECK(asymmetric_error_dist(0.5).variance() == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(d.variance() == doctest::Approx(var_expected).epsilon(1e-12));

  Rng rng(777);
  const int n = 1000000;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = d.sample(rng);
    mean += v;
    m2 += v * v;
  }
  mean /= n;
  m2 = m2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.005);
  CHECK(m2 == doctest::Approx(var_expected).epsilon(0.01));
}

TEST_CASE("asymmetric simulation routes the error law into the sloped component") {
  Sample s = simulate_asymmetric(5000, 0.7, 1.0, 0.6, Distribution::gaussian(0.0, 9.0), 3);
  auto d = asymmetric_error_dist(0.6);
  double rmean = 0.0, rm2 = 0.0;
  int k = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(*s.u)[i]) continue;
    double r = s.y[i] - s.x[i];  // alpha* = 0, beta* = 1
    rmean += r;
    rm2 += r * r;
    ++k;
  }
  rmean /= k;
  rm2 = rm2 / k - rmean * rmean;
  CHECK(std::abs(rmean) < 0.1);
  CHECK(rm2 == doctest::Approx(d.variance()).epsilon(0.1));
}

TEST_CASE("weight point draws are frozen by seed") {
  auto q = Distribution::gaussian(0.0, 16.0);
  auto a = sample_weight_points(50, q, 9);
  auto b = sample_weight_points(50, q, 9);
  auto c = sample_weight_points(50, q, 10);
  CHECK(a == b);
  CHECK(a != c);
  double m2 = 0.0;
  auto big = sample_weight_points(100000, q, 1);
  for (double v : big) m2 += v * v;
  CHECK(m2 / double(big.size()) == doctest::Approx(16.0).epsilon(0.03));
}

TEST_CASE("pre-centering subtracts the known line") {
  Sample s;
  s.x = {0.0, 1.0, 2.0};
  s.y = {1.0, 4.0, 7.0};
  Sample c = center(s, 1.0, 3.0);
  CHECK(c.y[0] == doctest::Approx(0.0));
  CHECK(c.y[1] == doctest::Approx(0.0));
  CHECK(c.y[2] == doctest::Approx(0.0));
  CHECK(c.x == s.x);
}
