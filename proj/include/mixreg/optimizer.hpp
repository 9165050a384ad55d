#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixreg/contrast.hpp"

namespace mixreg {

struct OptimConfig {
  std::array<double, 3> delta_init = {0.01, 0.01, 0.01};  // initial perturbation
  double eps_stop = 0.005;                                // on ||v2 - v1||_2
  std::array<double, 3> gamma = {0.2, 0.2, 0.5};          // step scales (p, alpha, beta)
  int max_iters = 500;
  std::vector<Vartheta> starts;          // empty -> 3x3x3 lattice over the box
  std::optional<double> fixed_alpha;     // pin alpha (the table studies use 0)
  bool backtracking = false;             // halve the step while d_n increases

  void validate() const {
    if (!(eps_stop > 0.0)) throw std::invalid_argument("OptimConfig: eps_stop must be > 0");
    for (double g : gamma)
      if (!(g > 0.0)) throw std::invalid_argument("OptimConfig: gamma must be > 0 componentwise");
    if (max_iters < 1) throw std::invalid_argument("OptimConfig: max_iters must be >= 1");
  }
};

struct LocalMinimum {
  Vartheta point;
  double d_value;
  double l1_score = 0.0;  // filled by the selection rule
  int iterations;
  bool converged;
};

struct EstimateReport {
  Vartheta vartheta_hat;
  double d_value;
  int iterations;
  bool converged;
  std::vector<LocalMinimum> all_minima;
  std::string selected_by;  // "single-minimum" or "l1-rule"

  std::string csv_header() const;
  std::string csv_row() const;
  std::string text_report() const;
};

/// Objective: value and, when grad != nullptr, the gradient.
using Objective = std::function<double(const Vartheta&, Gradient*)>;

/// Projected gradient descent with multi-start over the box; stabilized
/// iterates within l1-distance 2*eps_stop are merged. The returned best run
/// is by d_value; callers with a context should prefer estimate().
EstimateReport minimize(const Objective& objective, const ParamBox& box, const OptimConfig& cfg);

/// Full pipeline on a contrast context: minimize, then the L1 selection rule
/// when several distinct minima survive clustering.
EstimateReport estimate(const ContrastContext& ctx, const ParamBox& box, const OptimConfig& cfg);

/// L1 model-fit selection among candidate minima: compares a model-free KDE
/// of the raw responses with the model-implied marginal built from each
/// candidate's plug-in density. Ties break by d_n value, then lexicographic.
Vartheta select_among_minima(const ContrastContext& ctx, const std::vector<Vartheta>& minima);

/// Scores used by select_among_minima, exposed for reporting.
std::vector<double> selection_scores(const ContrastContext& ctx,
                                     const std::vector<Vartheta>& minima);

/// Plug-in density estimate of the unknown error pdf. The second term enters
/// with a minus sign (the inversion formula); `plus_sign_variant` keeps the
/// alternative sign for auditing.
double plugin_f_hat(const ContrastContext& ctx, const Vartheta& vartheta_hat, double t,
                    bool clip_negative = false, bool plus_sign_variant = false);
std::vector<double> plugin_f_hat_grid(const ContrastContext& ctx, const Vartheta& vartheta_hat,
                                      std::span<const double> ts, bool clip_negative = false,
                                      bool plus_sign_variant = false);

/// Plug-in cdf estimate, raw version.
double plugin_F_hat(const ContrastContext& ctx, const Vartheta& vartheta_hat, double y);

/// Grid version with optional monotone correction (running max, clamped to [0,1]).
std::vector<double> plugin_F_hat_grid(const ContrastContext& ctx, const Vartheta& vartheta_hat,
                                      std::span<const double> ys, bool monotone_corrected = true);

/// Simpson evaluation grid covering the effective support of the transformed
/// data: [min - 5b, max + 5b] with 2^10 + 1 points.
std::vector<double> default_quadrature_grid(const ContrastContext& ctx, Theta theta);

}  // namespace mixreg
