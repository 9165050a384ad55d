#include "mixreg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace mixreg {

std::string to_string(ModelId id) {
  switch (id) {
    case ModelId::M1: return "M1";
    case ModelId::M2: return "M2";
    case ModelId::M3: return "M3";
    case ModelId::Asymmetric: return "asymmetric";
  }
  return "?";
}

ModelId model_from_string(const std::string& s) {
  if (s == "M1" || s == "m1") return ModelId::M1;
  if (s == "M2" || s == "m2") return ModelId::M2;
  if (s == "M3" || s == "m3") return ModelId::M3;
  if (s == "asymmetric") return ModelId::Asymmetric;
  throw std::invalid_argument("unknown model: " + s);
}

ModelParams model_params(ModelId id) {
  switch (id) {
    case ModelId::M1: return {0.7, 1.0, 4.0};
    case ModelId::M2: return {0.3, 1.0, 2.0};
    case ModelId::M3: return {0.3, 1.0, 4.0};
    case ModelId::Asymmetric: return {0.7, 1.0, 4.0};  // base M1
  }
  throw std::invalid_argument("unknown model id");
}

OptimConfig table_optimizer() {
  OptimConfig cfg;
  cfg.delta_init = {0.01, 0.0, 0.01};
  cfg.eps_stop = 0.005;
  cfg.gamma = {0.2, 0.2, 0.5};
  cfg.max_iters = 500;
  cfg.fixed_alpha = 0.0;
  return cfg;
}

ParamBox table_box() { return ParamBox{0.01, 0.99, -2.0, 2.0, 0.05, 3.0}; }

namespace {

Sample simulate_model(const ExperimentSpec& spec, std::uint64_t rep_seed) {
  auto mp = model_params(spec.model);
  auto design = Distribution::gaussian(spec.design_mean, 9.0);
  if (spec.model == ModelId::Asymmetric)
    return simulate_asymmetric(spec.n, mp.p_star, mp.beta_star, spec.lambda, design, rep_seed);
  Vartheta truth{mp.p_star, 0.0, mp.beta_star};
  return simulate(spec.n, truth, Distribution::gaussian(0.0, 1.0),
                  Distribution::gaussian(0.0, 1.0), design, rep_seed);
}

/// Ordered parallel map over replication indices.
template <typename F>
void parallel_replications(int reps, F&& work) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (hw == 1 || reps == 1) {
    for (int r = 0; r < reps; ++r) work(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<unsigned>(hw, unsigned(reps)); ++t) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) work(r);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::optional<Vartheta> run_replication(const ExperimentSpec& spec, int rep_index) {
  spec.validate();
  auto mp = model_params(spec.model);
  std::uint64_t rep_seed = derive_seed(spec.seed, std::uint64_t(rep_index));
  Sample sample = simulate_model(spec, rep_seed);
  auto q = Distribution::gaussian(0.0, mp.sigma_v * mp.sigma_v);
  auto v_points = sample_weight_points(spec.n, q, rep_seed);
  ContrastContext ctx(std::move(sample), std::move(v_points), Distribution::gaussian(0.0, 1.0),
                      Kernel::triangular(), BandwidthRule::paper(), rep_seed);
  OptimConfig cfg = spec.optimizer;
  if (spec.init_at_truth) cfg.starts = {Vartheta{mp.p_star, 0.0, mp.beta_star}};
  EstimateReport rep = estimate(ctx, table_box(), cfg);
  if (!rep.converged) return std::nullopt;
  return rep.vartheta_hat;
}

namespace {

ReplicationSummary summarize(const std::vector<std::optional<Vartheta>>& results,
                             bool with_alpha) {
  ReplicationSummary s;
  for (const auto& r : results) {
    if (!r) {
      ++s.failures;
      continue;
    }
    s.estimates.push_back(*r);
  }
  s.used = int(s.estimates.size());
  if (s.used == 0) throw std::runtime_error("experiment: all replications failed to converge");
  if (s.failures * 10 > int(results.size()))
    throw std::runtime_error("experiment: failure rate above 10%");

  auto moments = [&](auto proj) {
    double mean = 0.0;
    for (const auto& e : s.estimates) mean += proj(e);
    mean /= double(s.used);
    double var = 0.0;
    for (const auto& e : s.estimates) var += (proj(e) - mean) * (proj(e) - mean);
    var = s.used > 1 ? var / double(s.used - 1) : 0.0;
    return std::pair<double, double>{mean, std::sqrt(var)};
  };
  std::tie(s.mean_p, s.sd_p) = moments([](const Vartheta& v) { return v.p; });
  std::tie(s.mean_beta, s.sd_beta) = moments([](const Vartheta& v) { return v.beta; });
  if (with_alpha) {
    auto [ma, sa] = moments([](const Vartheta& v) { return v.alpha; });
    s.mean_alpha = ma;
    s.sd_alpha = sa;
  }
  return s;
}

}  // namespace

ReplicationSummary run_table1(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<std::optional<Vartheta>> results(spec.replications);
  parallel_replications(spec.replications,
                        [&](int r) { results[r] = run_replication(spec, r); });
  return summarize(results, !spec.optimizer.fixed_alpha.has_value());
}

ReplicationSummary run_table2(double lambda, std::size_t n, int replications,
                              std::uint64_t seed) {
  ExperimentSpec spec;
  spec.model = ModelId::Asymmetric;
  spec.lambda = lambda;
  spec.n = n;
  spec.replications = replications;
  spec.seed = seed;
  spec.optimizer = table_optimizer();
  return run_table1(spec);
}

std::vector<std::vector<double>> surface_grid(const ContrastContext& ctx, double p_lo,
                                              double p_hi, double beta_lo, double beta_hi,
                                              std::size_t np, std::size_t nb, double alpha) {
  if (np < 2 || nb < 2) throw std::invalid_argument("surface_grid: grid dims must be >= 2");
  std::vector<std::vector<double>> rows;
  rows.reserve(np * nb);
  for (std::size_t i = 0; i < np; ++i) {
    double p = p_lo + (p_hi - p_lo) * double(i) / double(np - 1);
    for (std::size_t j = 0; j < nb; ++j) {
      double beta = beta_lo + (beta_hi - beta_lo) * double(j) / double(nb - 1);
      rows.push_back({p, alpha, beta, d_n(ctx, Vartheta{p, alpha, beta})});
    }
  }
  return rows;
}

double loglog_slope(const std::vector<std::size_t>& n_list, const std::vector<double>& errors) {
  if (n_list.size() != errors.size() || n_list.size() < 2)
    throw std::invalid_argument("loglog_slope: need >= 2 matching points");
  double mx = 0.0, my = 0.0;
  std::size_t k = n_list.size();
  for (std::size_t i = 0; i < k; ++i) {
    mx += std::log(double(n_list[i]));
    my += std::log(errors[i]);
  }
  mx /= double(k);
  my /= double(k);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double dx = std::log(double(n_list[i])) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  return sxy / sxx;
}

RateReport rate_sweep(const ExperimentSpec& spec_template,
                      const std::vector<std::size_t>& n_list, int reps) {
  if (n_list.size() < 3 || !std::is_sorted(n_list.begin(), n_list.end()))
    throw std::invalid_argument("rate_sweep: n_list must be >= 3 strictly increasing values");
  auto mp = model_params(spec_template.model);
  RateReport rep;
  rep.n_list = n_list;
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    ExperimentSpec spec = spec_template;
    spec.n = n_list[ni];
    spec.replications = reps;
    spec.seed = derive_seed(spec_template.seed, std::uint64_t(1000 + ni));
    auto summary = run_table1(spec);
    std::vector<double> errs;
    for (const auto& e : summary.estimates)
      errs.push_back(std::abs(e.p - mp.p_star) + std::abs(e.alpha - 0.0) +
                     std::abs(e.beta - mp.beta_star));
    std::sort(errs.begin(), errs.end());
    std::size_t k = errs.size();
    rep.median_errors.push_back(k % 2 == 1 ? errs[k / 2]
                                           : 0.5 * (errs[k / 2 - 1] + errs[k / 2]));
  }
  rep.slope = loglog_slope(n_list, rep.median_errors);
  return rep;
}

std::vector<Histogram> transformation_demo(const Sample& sample, const std::vector<Theta>& thetas,
                                           std::size_t bins) {
  sample.validate();
  std::vector<Histogram> out;
  for (const Theta& th : thetas) {
    auto tr = theta_transform(sample, th);
    Histogram h;
    h.theta = th;
    std::size_t k = bins ? bins
                         : std::size_t(std::ceil(std::log2(double(sample.size())))) + 1;
    auto [mn, mx] = std::minmax_element(tr.y_theta.begin(), tr.y_theta.end());
    double lo = *mn, hi = *mx;
    if (hi <= lo) hi = lo + 1.0;
    h.edges.resize(k + 1);
    for (std::size_t e = 0; e <= k; ++e) h.edges[e] = lo + (hi - lo) * double(e) / double(k);
    h.counts.assign(k, 0);
    for (double v : tr.y_theta) {
      auto bin = std::size_t((v - lo) / (hi - lo) * double(k));
      if (bin >= k) bin = k - 1;
      ++h.counts[bin];
    }
    out.push_back(std::move(h));
  }
  return out;
}

double skewness(const std::vector<double>& v) {
  if (v.size() < 3) throw std::invalid_argument("skewness: need >= 3 values");
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(v.size());
  double m2 = 0.0, m3 = 0.0;
  for (double x : v) {
    double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= double(v.size());
  m3 /= double(v.size());
  return m3 / std::pow(m2, 1.5);
}

}  // namespace mixreg
