#include "mixreg/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mixreg/quadrature.hpp"

namespace mixreg {

namespace {

double norm2(const Vartheta& a, const Vartheta& b) {
  double dp = a.p - b.p, da = a.alpha - b.alpha, db = a.beta - b.beta;
  return std::sqrt(dp * dp + da * da + db * db);
}

double norm1(const Vartheta& a, const Vartheta& b) {
  return std::abs(a.p - b.p) + std::abs(a.alpha - b.alpha) + std::abs(a.beta - b.beta);
}

bool lex_less(const Vartheta& a, const Vartheta& b) {
  if (a.p != b.p) return a.p < b.p;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.beta < b.beta;
}

std::vector<Vartheta> lattice_starts(const ParamBox& box, const OptimConfig& cfg) {
  std::vector<Vartheta> starts;
  const double fr[3] = {0.25, 0.5, 0.75};
  auto at = [](double lo, double hi, double f) { return lo + f * (hi - lo); };
  for (double fp : fr)
    for (double fb : fr) {
      if (cfg.fixed_alpha) {
        starts.push_back({at(box.p_lo, box.p_hi, fp), *cfg.fixed_alpha,
                          at(box.beta_lo, box.beta_hi, fb)});
      } else {
        for (double fa : fr)
          starts.push_back({at(box.p_lo, box.p_hi, fp), at(box.alpha_lo, box.alpha_hi, fa),
                            at(box.beta_lo, box.beta_hi, fb)});
      }
    }
  return starts;
}

LocalMinimum run_descent(const Objective& objective, const ParamBox& box, const OptimConfig& cfg,
                         Vartheta start) {
  if (cfg.fixed_alpha) start.alpha = *cfg.fixed_alpha;
  Vartheta prev = box.project(start);
  Vartheta cur = box.project({prev.p + cfg.delta_init[0],
                              cfg.fixed_alpha ? prev.alpha : prev.alpha + cfg.delta_init[1],
                              prev.beta + cfg.delta_init[2]});
  int iters = 0;
  double d_cur = std::numeric_limits<double>::quiet_NaN();
  while (norm2(cur, prev) > cfg.eps_stop && iters < cfg.max_iters) {
    prev = cur;
    Gradient g;
    double d_prev = objective(prev, &g);
    if (cfg.fixed_alpha) g.dalpha = 0.0;
    double scale = 1.0;
    for (int h = 0;; ++h) {
      cur = box.project({prev.p - scale * cfg.gamma[0] * g.dp,
                         prev.alpha - scale * cfg.gamma[1] * g.dalpha,
                         prev.beta - scale * cfg.gamma[2] * g.dbeta});
      if (!cfg.backtracking || h >= 10) break;
      d_cur = objective(cur, nullptr);
      if (d_cur <= d_prev) break;
      scale *= 0.5;
    }
    ++iters;
  }
  LocalMinimum lm;
  lm.point = cur;
  lm.d_value = objective(cur, nullptr);
  lm.iterations = iters;
  lm.converged = norm2(cur, prev) <= cfg.eps_stop || iters == 0;
  return lm;
}

}  // namespace

EstimateReport minimize(const Objective& objective, const ParamBox& box, const OptimConfig& cfg) {
  box.validate();
  cfg.validate();
  std::vector<Vartheta> starts = cfg.starts.empty() ? lattice_starts(box, cfg) : cfg.starts;
  bool any_inside = false;
  for (auto& s : starts) any_inside |= box.contains(box.project(s));
  if (starts.empty() || !any_inside)
    throw std::invalid_argument("minimize: need at least one start point inside the box");

  std::vector<LocalMinimum> runs;
  runs.reserve(starts.size());
  for (const auto& s : starts) runs.push_back(run_descent(objective, box, cfg, s));

  // merge stabilized iterates within l1-distance 2*eps into one minimum
  std::sort(runs.begin(), runs.end(), [](const LocalMinimum& a, const LocalMinimum& b) {
    if (a.d_value != b.d_value) return a.d_value < b.d_value;
    return lex_less(a.point, b.point);
  });
  std::vector<LocalMinimum> clusters;
  for (const auto& r : runs) {
    bool merged = false;
    for (auto& c : clusters) {
      if (norm1(r.point, c.point) <= 2.0 * cfg.eps_stop) {
        merged = true;  // c already has the smaller d_value
        break;
      }
    }
    if (!merged) clusters.push_back(r);
  }

  EstimateReport rep;
  rep.all_minima = clusters;
  rep.vartheta_hat = clusters.front().point;
  rep.d_value = clusters.front().d_value;
  rep.iterations = clusters.front().iterations;
  rep.converged = clusters.front().converged;
  rep.selected_by = "single-minimum";
  return rep;
}

EstimateReport estimate(const ContrastContext& ctx, const ParamBox& box, const OptimConfig& cfg) {
  Objective obj = [&ctx](const Vartheta& v, Gradient* g) { return d_n_with_grad(ctx, v, g); };
  EstimateReport rep = minimize(obj, box, cfg);
  if (rep.all_minima.size() > 1) {
    std::vector<Vartheta> candidates;
    for (const auto& c : rep.all_minima) candidates.push_back(c.point);
    auto scores = selection_scores(ctx, candidates);
    for (std::size_t i = 0; i < scores.size(); ++i) rep.all_minima[i].l1_score = scores[i];
    Vartheta chosen = select_among_minima(ctx, candidates);
    for (const auto& c : rep.all_minima) {
      if (c.point.p == chosen.p && c.point.alpha == chosen.alpha && c.point.beta == chosen.beta) {
        rep.vartheta_hat = c.point;
        rep.d_value = c.d_value;
        rep.iterations = c.iterations;
        rep.converged = c.converged;
        break;
      }
    }
    rep.selected_by = "l1-rule";
  }
  return rep;
}

std::vector<double> default_quadrature_grid(const ContrastContext& ctx, Theta theta) {
  auto tr = ctx.transformed(theta);
  auto [mn, mx] = std::minmax_element(tr->y_theta.begin(), tr->y_theta.end());
  double b = ctx.bandwidth();
  return uniform_grid(*mn - 5.0 * b, *mx + 5.0 * b, (1u << 10) + 1);
}

std::vector<double> selection_scores(const ContrastContext& ctx,
                                     const std::vector<Vartheta>& minima) {
  if (minima.empty()) throw std::invalid_argument("selection: minima must be non-empty");
  const Sample& s = ctx.sample();
  const std::size_t n = s.size();
  const double b = ctx.bandwidth();

  // model-free side: KDE of the raw responses
  auto [ymn, ymx] = std::minmax_element(s.y.begin(), s.y.end());
  auto grid = uniform_grid(*ymn - 5.0 * b, *ymx + 5.0 * b, (1u << 10) + 1);
  ThetaTransformed raw{s.y, Theta{0.0, 0.0}};
  auto g_free = kde_psi_grid(raw, grid, ctx.kernel(), b);

  std::vector<double> scores(minima.size());
  for (std::size_t c = 0; c < minima.size(); ++c) {
    const Vartheta& v = minima[c];
    // tabulate the clipped plug-in density over the argument range of
    // y - theta.X, then resolve the Monte-Carlo convolution by interpolation
    double cmin = theta_dot(v.theta(), s.x[0]), cmax = cmin;
    for (double xi : s.x) {
      double t = theta_dot(v.theta(), xi);
      cmin = std::min(cmin, t);
      cmax = std::max(cmax, t);
    }
    double amin = grid.front() - cmax, amax = grid.back() - cmin;
    const std::size_t nf = 2049;
    auto fgrid = uniform_grid(amin, amax, nf);
    auto fvals = plugin_f_hat_grid(ctx, v, fgrid, /*clip_negative=*/true);
    double fstep = (amax - amin) / double(nf - 1);
    auto f_interp = [&](double t) {
      double u = (t - amin) / fstep;
      if (u <= 0.0) return fvals.front();
      if (u >= double(nf - 1)) return fvals.back();
      std::size_t k = std::size_t(u);
      double w = u - double(k);
      return (1.0 - w) * fvals[k] + w * fvals[k + 1];
    };

    std::vector<double> diff(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      double conv = 0.0;
      for (double xi : s.x) conv += f_interp(grid[k] - theta_dot(v.theta(), xi));
      conv /= double(n);
      double g_model = v.p * conv + (1.0 - v.p) * ctx.f0().pdf(grid[k]);
      diff[k] = std::abs(g_free[k] - g_model);
    }
    scores[c] = simpson(diff, grid.front(), grid.back());
  }
  return scores;
}

Vartheta select_among_minima(const ContrastContext& ctx, const std::vector<Vartheta>& minima) {
  if (minima.size() == 1) return minima.front();
  auto scores = selection_scores(ctx, minima);
  std::size_t best = 0;
  for (std::size_t c = 1; c < minima.size(); ++c) {
    if (scores[c] < scores[best]) {
      best = c;
    } else if (scores[c] == scores[best]) {
      double dc = d_n(ctx, minima[c]), db = d_n(ctx, minima[best]);
      if (dc < db || (dc == db && lex_less(minima[c], minima[best]))) best = c;
    }
  }
  return minima[best];
}

double plugin_f_hat(const ContrastContext& ctx, const Vartheta& vartheta_hat, double t,
                    bool clip_negative, bool plus_sign_variant) {
  if (!(vartheta_hat.p > 0.0)) throw std::domain_error("plugin_f_hat: p must be > 0");
  auto tr = ctx.transformed(vartheta_hat.theta());
  double b = ctx.bandwidth();
  double psi = kde_psi(*tr, t, ctx.kernel(), b);
  double itilde =
      sim_I_tilde(ctx.sample(), vartheta_hat.theta(), ctx.eps0_sim(), ctx.tilde_kernel(), b, t);
  double p = vartheta_hat.p;
  double sign = plus_sign_variant ? 1.0 : -1.0;
  double v = psi / p + sign * (1.0 - p) / p * itilde;
  return clip_negative ? std::max(0.0, v) : v;
}

std::vector<double> plugin_f_hat_grid(const ContrastContext& ctx, const Vartheta& vartheta_hat,
                                      std::span<const double> ts, bool clip_negative,
                                      bool plus_sign_variant) {
  std::vector<double> out(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k)
    out[k] = plugin_f_hat(ctx, vartheta_hat, ts[k], clip_negative, plus_sign_variant);
  return out;
}

double plugin_F_hat(const ContrastContext& ctx, const Vartheta& vartheta_hat, double y) {
  if (!(vartheta_hat.p > 0.0)) throw std::domain_error("plugin_F_hat: p must be > 0");
  auto tr = ctx.transformed(vartheta_hat.theta());
  double b = ctx.bandwidth();
  double ft = smoothed_cdf(*tr, y, ctx.kernel(), b);
  double jt =
      sim_J_tilde(ctx.sample(), vartheta_hat.theta(), ctx.eps0_sim(), ctx.tilde_kernel(), b, y);
  double p = vartheta_hat.p;
  return ft / p - (1.0 - p) / p * jt;
}

std::vector<double> plugin_F_hat_grid(const ContrastContext& ctx, const Vartheta& vartheta_hat,
                                      std::span<const double> ys, bool monotone_corrected) {
  std::vector<double> out(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) out[k] = plugin_F_hat(ctx, vartheta_hat, ys[k]);
  if (monotone_corrected) {
    double run = 0.0;
    for (auto& v : out) {
      run = std::max(run, std::min(1.0, std::max(0.0, v)));
      v = run;
    }
  }
  return out;
}

std::string EstimateReport::csv_header() const {
  return "p_hat,alpha_hat,beta_hat,d_value,iterations,converged,selected_by";
}

std::string EstimateReport::csv_row() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d,%d,%s", vartheta_hat.p,
                vartheta_hat.alpha, vartheta_hat.beta, d_value, iterations, int(converged),
                selected_by.c_str());
  return buf;
}

std::string EstimateReport::text_report() const {
  std::ostringstream os;
  os << "estimate: p_hat=" << vartheta_hat.p << " alpha_hat=" << vartheta_hat.alpha
     << " beta_hat=" << vartheta_hat.beta << "\n"
     << "d_n=" << d_value << " iterations=" << iterations
     << " converged=" << (converged ? "yes" : "no") << " selected_by=" << selected_by << "\n";
  if (all_minima.size() > 1) {
    os << "local minima:\n";
    for (const auto& m : all_minima)
      os << "  (p=" << m.point.p << ", alpha=" << m.point.alpha << ", beta=" << m.point.beta
         << ") d_n=" << m.d_value << " l1_score=" << m.l1_score << "\n";
  }
  return os.str();
}

}  // namespace mixreg
