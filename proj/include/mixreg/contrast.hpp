#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>

#include "mixreg/estimators.hpp"
#include "mixreg/simulate.hpp"

namespace mixreg {

struct HValue {
  double h1;
  double h2;
  double h() const { return h1 - h2; }
};

struct Gradient {
  double dp;
  double dalpha;
  double dbeta;
};

/// Everything one estimation run keeps fixed across parameter values: the
/// data, the frozen Q-draws, the frozen simulated f0-sample for the plug-in
/// step, the kernels and the resolved bandwidth.
class ContrastContext {
 public:
  ContrastContext(Sample sample, std::vector<double> v_points, Distribution f0,
                  Kernel kernel, BandwidthRule bandwidth_rule,
                  std::uint64_t eps0_seed = 0, Kernel tilde_kernel = Kernel::gaussian());

  const Sample& sample() const { return sample_; }
  const std::vector<double>& v_points() const { return v_points_; }
  const Distribution& f0() const { return f0_; }
  const Kernel& kernel() const { return kernel_; }
  const Kernel& tilde_kernel() const { return tilde_kernel_; }
  double bandwidth() const { return bandwidth_; }
  const std::vector<double>& eps0_sim() const { return eps0_sim_; }

  /// Memoized theta-transformed residuals, keyed by the exact bits of theta.
  std::shared_ptr<const ThetaTransformed> transformed(Theta theta) const;

 private:
  Sample sample_;
  std::vector<double> v_points_;
  Distribution f0_;
  Kernel kernel_;
  Kernel tilde_kernel_;
  double bandwidth_;
  std::vector<double> eps0_sim_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<std::uint64_t, std::uint64_t>,
                   std::shared_ptr<const ThetaTransformed>>
      cache_;
};

/// H1, H2 at y with the empirical plug-ins F~ and J^.
HValue h_components(const ContrastContext& ctx, double y, const Vartheta& vartheta);

/// Empirical contrast d_n(vartheta) = (1/m) sum_j H^2(V_j; vartheta).
double d_n(const ContrastContext& ctx, const Vartheta& vartheta);

/// Closed-form gradient of d_n in (p, alpha, beta).
Gradient grad_d_n(const ContrastContext& ctx, const Vartheta& vartheta);

/// Fused evaluation; one pass over the data per V-point.
double d_n_with_grad(const ContrastContext& ctx, const Vartheta& vartheta, Gradient* grad);

}  // namespace mixreg
