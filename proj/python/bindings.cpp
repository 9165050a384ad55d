// Python bindings for the contaminated-regression toolkit: simulation,
// contrast evaluation, estimation, replication studies and the closed-form
// Gaussian diagnostics.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "mixreg/experiments.hpp"
#include "mixreg/gaussian.hpp"
#include "mixreg/optimizer.hpp"
#include "mixreg/quadrature.hpp"
#include "mixreg/simulate.hpp"

namespace py = pybind11;
using namespace mixreg;

namespace {

ContrastContext make_context(const std::vector<double>& x, const std::vector<double>& y,
                             std::uint64_t seed, const std::string& kernel, double sigma_v,
                             std::size_t m) {
  Sample s;
  s.x = x;
  s.y = y;
  s.validate();
  std::size_t mm = m ? m : s.size();
  auto v = sample_weight_points(mm, Distribution::gaussian(0.0, sigma_v * sigma_v), seed);
  Kernel k = kernel == "gaussian" ? Kernel::gaussian() : Kernel::triangular();
  return ContrastContext(std::move(s), std::move(v), Distribution::gaussian(0.0, 1.0), k,
                         BandwidthRule::paper(), seed);
}

py::dict report_to_dict(const EstimateReport& rep) {
  py::dict d;
  d["p_hat"] = rep.vartheta_hat.p;
  d["alpha_hat"] = rep.vartheta_hat.alpha;
  d["beta_hat"] = rep.vartheta_hat.beta;
  d["d_value"] = rep.d_value;
  d["iterations"] = rep.iterations;
  d["converged"] = rep.converged;
  d["selected_by"] = rep.selected_by;
  py::list minima;
  for (const auto& mn : rep.all_minima) {
    py::dict e;
    e["p"] = mn.point.p;
    e["alpha"] = mn.point.alpha;
    e["beta"] = mn.point.beta;
    e["d_value"] = mn.d_value;
    e["l1_score"] = mn.l1_score;
    minima.append(e);
  }
  d["minima"] = minima;
  return d;
}

}  // namespace

PYBIND11_MODULE(_mixreg, mod) {
  mod.doc() = "contaminated-regression estimation: simulation, contrast, estimator";

  mod.def(
      "simulate",
      [](std::size_t n, double p, double alpha, double beta, std::uint64_t seed,
         double design_mean, std::optional<double> lambda) {
        Vartheta truth{p, alpha, beta};
        auto design = Distribution::gaussian(design_mean, 9.0);
        auto f0 = Distribution::gaussian(0.0, 1.0);
        Sample s = lambda ? simulate(n, truth, f0, asymmetric_error_dist(*lambda), design, seed)
                          : simulate(n, truth, f0, f0, design, seed);
        return py::make_tuple(s.x, s.y, *s.u);
      },
      py::arg("n"), py::arg("p"), py::arg("alpha"), py::arg("beta"), py::arg("seed"),
      py::arg("design_mean") = 0.0, py::arg("lambda_") = py::none(),
      "Draw (x, y, labels); lambda_ switches the unknown error law to the skewed mixture.");

  mod.def(
      "contrast",
      [](const std::vector<double>& x, const std::vector<double>& y, double p, double alpha,
         double beta, std::uint64_t seed, const std::string& kernel, double sigma_v,
         std::size_t m) {
        auto ctx = make_context(x, y, seed, kernel, sigma_v, m);
        Gradient g;
        double d = d_n_with_grad(ctx, Vartheta{p, alpha, beta}, &g);
        return py::make_tuple(d, py::make_tuple(g.dp, g.dalpha, g.dbeta));
      },
      py::arg("x"), py::arg("y"), py::arg("p"), py::arg("alpha"), py::arg("beta"),
      py::arg("seed"), py::arg("kernel") = "triangular", py::arg("sigma_v") = 4.0,
      py::arg("m") = 0, "Empirical contrast value and its gradient at (p, alpha, beta).");

  mod.def(
      "estimate",
      [](const std::vector<double>& x, const std::vector<double>& y, std::uint64_t seed,
         const std::string& kernel, double sigma_v, std::size_t m,
         std::vector<double> box_values, std::vector<double> gamma, double eps_stop,
         int max_iters, std::vector<std::vector<double>> starts,
         std::optional<double> fixed_alpha) {
        auto ctx = make_context(x, y, seed, kernel, sigma_v, m);
        if (box_values.size() != 6)
          throw std::invalid_argument("box must be [p_lo, p_hi, a_lo, a_hi, b_lo, b_hi]");
        ParamBox box{box_values[0], box_values[1], box_values[2],
                     box_values[3], box_values[4], box_values[5]};
        OptimConfig cfg;
        if (gamma.size() != 3) throw std::invalid_argument("gamma must have 3 entries");
        cfg.gamma = {gamma[0], gamma[1], gamma[2]};
        cfg.eps_stop = eps_stop;
        cfg.max_iters = max_iters;
        for (const auto& st : starts) {
          if (st.size() != 3) throw std::invalid_argument("starts entries must be (p, a, b)");
          cfg.starts.push_back(Vartheta{st[0], st[1], st[2]});
        }
        cfg.fixed_alpha = fixed_alpha;
        return report_to_dict(estimate(ctx, box, cfg));
      },
      py::arg("x"), py::arg("y"), py::arg("seed"), py::arg("kernel") = "triangular",
      py::arg("sigma_v") = 4.0, py::arg("m") = 0,
      py::arg("box") = std::vector<double>{0.01, 0.99, -2.0, 2.0, 0.05, 3.0},
      py::arg("gamma") = std::vector<double>{0.2, 0.2, 0.5}, py::arg("eps_stop") = 0.005,
      py::arg("max_iters") = 500, py::arg("starts") = std::vector<std::vector<double>>{},
      py::arg("fixed_alpha") = py::none(),
      "Fit (p, alpha, beta) by contrast minimization; returns a report dict.");

  mod.def(
      "error_law_estimates",
      [](const std::vector<double>& x, const std::vector<double>& y, double p, double alpha,
         double beta, const std::vector<double>& grid, std::uint64_t seed,
         const std::string& kernel, double sigma_v, std::size_t m) {
        auto ctx = make_context(x, y, seed, kernel, sigma_v, m);
        Vartheta v{p, alpha, beta};
        return py::make_tuple(plugin_f_hat_grid(ctx, v, grid),
                              plugin_F_hat_grid(ctx, v, grid, true));
      },
      py::arg("x"), py::arg("y"), py::arg("p"), py::arg("alpha"), py::arg("beta"),
      py::arg("grid"), py::arg("seed"), py::arg("kernel") = "triangular",
      py::arg("sigma_v") = 4.0, py::arg("m") = 0,
      "Plug-in density and cdf of the unknown error law on a grid.");

  mod.def(
      "surface",
      [](const std::vector<double>& x, const std::vector<double>& y, std::uint64_t seed,
         double p_lo, double p_hi, double beta_lo, double beta_hi, std::size_t np,
         std::size_t nb, double alpha, const std::string& kernel, double sigma_v,
         std::size_t m) {
        auto ctx = make_context(x, y, seed, kernel, sigma_v, m);
        return surface_grid(ctx, p_lo, p_hi, beta_lo, beta_hi, np, nb, alpha);
      },
      py::arg("x"), py::arg("y"), py::arg("seed"), py::arg("p_lo") = 0.5,
      py::arg("p_hi") = 0.8, py::arg("beta_lo") = 0.9, py::arg("beta_hi") = 1.1,
      py::arg("np") = 10, py::arg("nb") = 10, py::arg("alpha") = 0.0,
      py::arg("kernel") = "triangular", py::arg("sigma_v") = 4.0, py::arg("m") = 0,
      "Contrast values over a (p, beta) grid; rows are (p, alpha, beta, d_n).");

  mod.def(
      "replicate",
      [](const std::string& model, std::size_t n, int reps, std::uint64_t seed, double lambda,
         double design_mean) {
        ExperimentSpec spec;
        spec.model = model_from_string(model);
        spec.lambda = lambda;
        spec.n = n;
        spec.replications = reps;
        spec.seed = seed;
        spec.design_mean = design_mean;
        spec.optimizer = table_optimizer();
        ReplicationSummary sum = run_table1(spec);
        py::dict d;
        d["mean_p"] = sum.mean_p;
        d["mean_beta"] = sum.mean_beta;
        d["sd_p"] = sum.sd_p;
        d["sd_beta"] = sum.sd_beta;
        d["used"] = sum.used;
        d["failures"] = sum.failures;
        return d;
      },
      py::arg("model") = "M1", py::arg("n") = 100, py::arg("reps") = 100, py::arg("seed") = 1,
      py::arg("lambda_") = 0.5, py::arg("design_mean") = 0.0,
      "Monte-Carlo replication study; returns mean/sd of (p_hat, beta_hat).");

  mod.def(
      "diagnose",
      [](double p, double alpha, double beta, double m, double m0, double mu_x, double var_x) {
        GaussianModelSpec spec{m, m0, mu_x, var_x, Vartheta{p, alpha, beta}};
        spec.validate();
        ConditionReport cr = check_contrast_conditions(spec);
        py::dict d;
        d["c1_value"] = cr.c1_value;
        d["c1_pass"] = cr.c1_pass;
        d["c3_defined"] = cr.c3_defined;
        d["c3_pass"] = cr.c3_pass;
        d["summary"] = cr.summary();
        if (auto sh = spurious_solution(spec))
          d["second_zero"] = py::make_tuple(sh->p, sh->alpha, sh->beta);
        else
          d["second_zero"] = py::none();
        return d;
      },
      py::arg("p"), py::arg("alpha"), py::arg("beta"), py::arg("m") = 1.0,
      py::arg("m0") = 1.0, py::arg("mu_x") = 0.0, py::arg("var_x") = 9.0,
      "Closed-form Gaussian checks: contrast conditions and the second contrast zero.");

  mod.def(
      "population_contrast",
      [](double p, double alpha, double beta, double p_star, double alpha_star,
         double beta_star, double m, double m0, double mu_x, double var_x, double sigma_v) {
        GaussianModelSpec spec{m, m0, mu_x, var_x, Vartheta{p_star, alpha_star, beta_star}};
        spec.validate();
        return population_d(spec, Distribution::gaussian(0.0, sigma_v * sigma_v),
                            Vartheta{p, alpha, beta});
      },
      py::arg("p"), py::arg("alpha"), py::arg("beta"), py::arg("p_star"),
      py::arg("alpha_star"), py::arg("beta_star"), py::arg("m") = 1.0, py::arg("m0") = 1.0,
      py::arg("mu_x") = 0.0, py::arg("var_x") = 9.0, py::arg("sigma_v") = 4.0,
      "Closed-form population contrast of the fully Gaussian model.");
}
