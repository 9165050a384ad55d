#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixreg {

/// Shift parameters theta = (alpha, beta) of the unknown component.
struct Theta {
  double alpha = 0.0;
  double beta = 1.0;
};

inline double theta_dot(const Theta& th, double x) { return th.alpha + th.beta * x; }

/// Full Euclidean parameter (p, alpha, beta).
struct Vartheta {
  double p;
  double alpha;
  double beta;

  Theta theta() const { return {alpha, beta}; }

  void validate() const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("Vartheta: p must be in (0,1)");
    if (beta == 0.0) throw std::invalid_argument("Vartheta: beta must be nonzero");
    if (!std::isfinite(alpha) || !std::isfinite(beta))
      throw std::invalid_argument("Vartheta: parameters must be finite");
  }
};

/// Compact box [p_lo, p_hi] x [alpha_lo, alpha_hi] x [beta_lo, beta_hi],
/// with the beta interval bounded away from zero.
struct ParamBox {
  double p_lo, p_hi;
  double alpha_lo, alpha_hi;
  double beta_lo, beta_hi;

  void validate() const {
    if (!(0.0 < p_lo && p_lo <= p_hi && p_hi < 1.0))
      throw std::invalid_argument("ParamBox: need 0 < p_lo <= p_hi < 1");
    if (!(alpha_lo <= alpha_hi) || !(beta_lo <= beta_hi))
      throw std::invalid_argument("ParamBox: empty box");
    if (!(beta_lo > 0.0 || beta_hi < 0.0))
      throw std::invalid_argument("ParamBox: beta interval must exclude 0");
  }

  bool contains(const Vartheta& v) const {
    return v.p >= p_lo && v.p <= p_hi && v.alpha >= alpha_lo && v.alpha <= alpha_hi &&
           v.beta >= beta_lo && v.beta <= beta_hi;
  }

  Vartheta project(const Vartheta& v) const {
    auto clamp = [](double x, double lo, double hi) { return x < lo ? lo : (x > hi ? hi : x); };
    return {clamp(v.p, p_lo, p_hi), clamp(v.alpha, alpha_lo, alpha_hi),
            clamp(v.beta, beta_lo, beta_hi)};
  }
};

/// Paired design/response data, optionally with the latent component labels
/// (kept for diagnostics, never used by the estimators).
struct Sample {
  std::vector<double> x;
  std::vector<double> y;
  std::optional<std::vector<std::uint8_t>> u;

  std::size_t size() const { return x.size(); }

  void validate() const {
    if (x.empty() || x.size() != y.size())
      throw std::invalid_argument("Sample: x and y must be non-empty and equal length");
    if (u && u->size() != x.size())
      throw std::invalid_argument("Sample: labels must match sample size");
    if (u)
      for (auto v : *u)
        if (v > 1) throw std::invalid_argument("Sample: labels must be 0 or 1");
  }
};

}  // namespace mixreg
