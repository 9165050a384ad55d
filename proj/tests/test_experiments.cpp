#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "mixreg/experiments.hpp"
#include "mixreg/simulate.hpp"

using namespace mixreg;

TEST_CASE("model registry") {
  CHECK(model_from_string("M1") == ModelId::M1);
  CHECK(model_from_string("m2") == ModelId::M2);
  CHECK(model_from_string("asymmetric") == ModelId::Asymmetric);
  CHECK_THROWS_AS(model_from_string("M9"), std::invalid_argument);
  CHECK(to_string(ModelId::M3) == "M3");

  auto m1 = model_params(ModelId::M1);
  CHECK(m1.p_star == doctest::Approx(0.7));
  CHECK(m1.beta_star == doctest::Approx(1.0));
  CHECK(m1.sigma_v == doctest::Approx(4.0));
  CHECK(model_params(ModelId::M2).sigma_v == doctest::Approx(2.0));
  CHECK(model_params(ModelId::M3).p_star == doctest::Approx(0.3));
}

TEST_CASE("replication harness defaults") {
  auto cfg = table_optimizer();
  CHECK(cfg.eps_stop == doctest::Approx(0.005));
  CHECK(cfg.gamma[0] == doctest::Approx(0.2));
  CHECK(cfg.gamma[2] == doctest::Approx(0.5));
  REQUIRE(cfg.fixed_alpha.has_value());
  CHECK(*cfg.fixed_alpha == 0.0);
  auto box = table_box();
  CHECK(box.contains(Vartheta{0.7, 0.0, 1.0}));
  CHECK_FALSE(box.contains(Vartheta{0.7, 0.0, 3.5}));
}

TEST_CASE("single replication is reproducible and lands near the truth") {
  ExperimentSpec spec;
  spec.model = ModelId::M1;
  spec.n = 100;
  spec.seed = 7;
  spec.optimizer = table_optimizer();
  auto a = run_replication(spec, 0);
  auto b = run_replication(spec, 0);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->p == b->p);
  CHECK(a->beta == b->beta);
  CHECK(std::abs(a->p - 0.7) < 0.2);
  CHECK(std::abs(a->beta - 1.0) < 0.3);
  auto c = run_replication(spec, 1);
  REQUIRE(c.has_value());
  CHECK(c->p != a->p);  // different replication index, different data
}

TEST_CASE("small replication study aggregates sensibly") {
  ExperimentSpec spec;
  spec.model = ModelId::M1;
  spec.n = 100;
  spec.replications = 5;
  spec.seed = 19;
  spec.optimizer = table_optimizer();
  auto sum = run_table1(spec);
  CHECK(sum.used == 5);
  CHECK(sum.failures == 0);
  CHECK(std::abs(sum.mean_p - 0.7) < 0.15);
  CHECK(std::abs(sum.mean_beta - 1.0) < 0.2);
  CHECK(sum.sd_p >= 0.0);
  CHECK_FALSE(sum.mean_alpha.has_value());  // alpha pinned at 0

  // the mean really is the mean of the stored estimates
  double mp = 0.0;
  for (const auto& e : sum.estimates) mp += e.p;
  CHECK(sum.mean_p == doctest::Approx(mp / double(sum.used)).epsilon(1e-12));
}

TEST_CASE("contrast surface grid has the requested shape and nonnegative values") {
  Vartheta truth{0.7, 0.0, 1.0};
  auto f0 = Distribution::gaussian(0.0, 1.0);
  Sample s = simulate(100, truth, f0, f0, Distribution::gaussian(0.0, 9.0), 23);
  auto v = sample_weight_points(100, Distribution::gaussian(0.0, 16.0), 23);
  ContrastContext ctx(std::move(s), std::move(v), f0, Kernel::triangular(),
                      BandwidthRule::paper(), 23);

  auto rows = surface_grid(ctx, 0.5, 0.8, 0.9, 1.1, 2, 2, 0.0);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    REQUIRE(r.size() == 4);
    CHECK(r[1] == 0.0);  // alpha column
    CHECK(r[3] >= 0.0);
  }
  CHECK(rows.front()[0] == doctest::Approx(0.5));
  CHECK(rows.back()[0] == doctest::Approx(0.8));
  CHECK(rows.back()[2] == doctest::Approx(1.1));
  CHECK_THROWS_AS(surface_grid(ctx, 0.5, 0.8, 0.9, 1.1, 1, 2, 0.0), std::invalid_argument);
}

TEST_CASE("log-log slope recovery: exact, null and error cases") {
  std::vector<std::size_t> ns = {100, 400, 1600};
  std::vector<double> quarter(ns.size()), flat(ns.size(), 0.37);
  for (std::size_t i = 0; i < ns.size(); ++i) quarter[i] = 3.0 * std::pow(double(ns[i]), -0.25);
  CHECK(loglog_slope(ns, quarter) == doctest::Approx(-0.25).epsilon(1e-6));
  CHECK(std::abs(loglog_slope(ns, flat)) < 1e-12);
  CHECK_THROWS_AS(loglog_slope({100}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(loglog_slope(ns, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("residual histograms: raw view, bin bookkeeping and symmetry at the truth") {
  Vartheta truth{0.7, 2.0, 1.0};
  auto f0 = Distribution::gaussian(0.0, 1.0);
  Sample s = simulate(10000, truth, f0, f0, Distribution::gaussian(2.0, 9.0), 29);

  auto hists = transformation_demo(s, {Theta{0.0, 0.0}, Theta{1.0, 0.5}, truth.theta()});
  REQUIRE(hists.size() == 3);
  for (const auto& h : hists) {
    CHECK(h.edges.size() == h.counts.size() + 1);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == s.size());
  }
  // theta = (0,0) bins the raw responses
  auto [ymn, ymx] = std::minmax_element(s.y.begin(), s.y.end());
  CHECK(hists[0].edges.front() == doctest::Approx(*ymn));
  CHECK(hists[0].edges.back() == doctest::Approx(*ymx));

  // at theta* the labeled sloped-band residuals are symmetric
  auto tr = theta_transform(s, truth.theta());
  std::vector<double> contaminated;
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((*s.u)[i]) contaminated.push_back(tr.y_theta[i]);
  CHECK(std::abs(skewness(contaminated)) < 0.2);

  // a wrong transform leaves a visibly skewed or shifted mix
  auto wrong = theta_transform(s, Theta{0.0, 0.0});
  CHECK(std::abs(skewness(wrong.y_theta)) > 0.2);
  CHECK_THROWS_AS(skewness({1.0, 2.0}), std::invalid_argument);
}
