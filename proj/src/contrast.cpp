#include "mixreg/contrast.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mixreg {

ContrastContext::ContrastContext(Sample sample, std::vector<double> v_points, Distribution f0,
                                 Kernel kernel, BandwidthRule bandwidth_rule,
                                 std::uint64_t eps0_seed, Kernel tilde_kernel)
    : sample_(std::move(sample)),
      v_points_(std::move(v_points)),
      f0_(std::move(f0)),
      kernel_(kernel),
      tilde_kernel_(tilde_kernel) {
  sample_.validate();
  if (v_points_.empty()) throw std::invalid_argument("ContrastContext: v_points must be non-empty");
  bandwidth_ = bandwidth_rule.value(sample_.size());
  // simulated f0-sample, drawn once and frozen across all theta
  Rng rng(derive_seed(eps0_seed, "eps0_sim"));
  eps0_sim_.resize(sample_.size());
  for (auto& e : eps0_sim_) e = f0_.sample(rng);
}

std::shared_ptr<const ThetaTransformed> ContrastContext::transformed(Theta theta) const {
  auto key = std::make_pair(std::bit_cast<std::uint64_t>(theta.alpha),
                            std::bit_cast<std::uint64_t>(theta.beta));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto val = std::make_shared<const ThetaTransformed>(theta_transform(sample_, theta));
  if (cache_.size() > 64) cache_.clear();
  cache_.emplace(key, val);
  return val;
}

HValue h_components(const ContrastContext& ctx, double y, const Vartheta& vartheta) {
  if (!(vartheta.p > 0.0)) throw std::domain_error("h_components: p must be > 0");
  auto tr = ctx.transformed(vartheta.theta());
  double b = ctx.bandwidth();
  double ft_p = smoothed_cdf(*tr, y, ctx.kernel(), b);
  double ft_m = smoothed_cdf(*tr, -y, ctx.kernel(), b);
  double j_p = mc_J(ctx.sample(), vartheta.theta(), ctx.f0(), y);
  double j_m = mc_J(ctx.sample(), vartheta.theta(), ctx.f0(), -y);
  double p = vartheta.p;
  HValue out;
  out.h1 = ft_p / p - (1.0 - p) / p * j_p;
  out.h2 = 1.0 - ft_m / p + (1.0 - p) / p * j_m;
  return out;
}

double d_n_with_grad(const ContrastContext& ctx, const Vartheta& vartheta, Gradient* grad) {
  if (!(vartheta.p > 0.0)) throw std::domain_error("d_n: p must be > 0");
  const Sample& s = ctx.sample();
  const std::size_t n = s.size();
  const std::size_t m = ctx.v_points().size();
  const double p = vartheta.p;
  const double b = ctx.bandwidth();
  const Kernel& ker = ctx.kernel();
  const Distribution& f0 = ctx.f0();

  // per-observation transforms, computed once per call
  std::vector<double> yt(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = vartheta.alpha + vartheta.beta * s.x[i];
    yt[i] = s.y[i] - c[i];
  }

  double d = 0.0, gp = 0.0, ga = 0.0, gb = 0.0;
  const double inv_n = 1.0 / double(n);
  const double q1 = 1.0 / p, q2 = (1.0 - p) / p;

  for (std::size_t j = 0; j < m; ++j) {
    const double y = ctx.v_points()[j];
    double ft_p = 0.0, ft_m = 0.0;       // F~(y), F~(-y)
    double jj_p = 0.0, jj_m = 0.0;       // J^(y), J^(-y)
    double psi_p = 0.0, psi_m = 0.0;     // kernel sums for Psi^
    double psix_p = 0.0, psix_m = 0.0;   // X-weighted kernel sums
    double ii_p = 0.0, ii_m = 0.0;       // I^(y), I^(-y)
    double jb_p = 0.0, jb_m = 0.0;       // X-weighted f0 sums
    for (std::size_t i = 0; i < n; ++i) {
      const double up = (y - yt[i]) / b;
      const double um = (-y - yt[i]) / b;
      ft_p += ker.cdf(up);
      ft_m += ker.cdf(um);
      const double kp = ker.density(up);
      const double km = ker.density(um);
      psi_p += kp;
      psi_m += km;
      psix_p += s.x[i] * kp;
      psix_m += s.x[i] * km;
      jj_p += f0.cdf(y + c[i]);
      jj_m += f0.cdf(-y + c[i]);
      const double fp = f0.pdf(y + c[i]);
      const double fm = f0.pdf(-y + c[i]);
      ii_p += fp;
      ii_m += fm;
      jb_p += s.x[i] * fp;
      jb_m += s.x[i] * fm;
    }
    ft_p *= inv_n;
    ft_m *= inv_n;
    jj_p *= inv_n;
    jj_m *= inv_n;
    const double inv_nb = inv_n / b;
    psi_p *= inv_nb;
    psi_m *= inv_nb;
    psix_p *= inv_nb;
    psix_m *= inv_nb;
    ii_p *= inv_n;
    ii_m *= inv_n;
    jb_p *= inv_n;
    jb_m *= inv_n;

    const double H = q1 * (ft_p + ft_m) - q2 * (jj_p + jj_m) - 1.0;
    d += H * H;
    if (grad) {
      const double hp = -(ft_p + ft_m - jj_p - jj_m) / (p * p);
      const double ha = q1 * (psi_p + psi_m) - q2 * (ii_p + ii_m);
      const double hb = q1 * (psix_p + psix_m) - q2 * (jb_p + jb_m);
      gp += 2.0 * H * hp;
      ga += 2.0 * H * ha;
      gb += 2.0 * H * hb;
    }
  }
  const double inv_m = 1.0 / double(m);
  if (grad) {
    grad->dp = gp * inv_m;
    grad->dalpha = ga * inv_m;
    grad->dbeta = gb * inv_m;
    if (!std::isfinite(grad->dp) || !std::isfinite(grad->dalpha) || !std::isfinite(grad->dbeta))
      throw std::runtime_error("grad_d_n: non-finite gradient at p=" + std::to_string(vartheta.p) +
                               " alpha=" + std::to_string(vartheta.alpha) +
                               " beta=" + std::to_string(vartheta.beta));
  }
  return d * inv_m;
}

double d_n(const ContrastContext& ctx, const Vartheta& vartheta) {
  return d_n_with_grad(ctx, vartheta, nullptr);
}

Gradient grad_d_n(const ContrastContext& ctx, const Vartheta& vartheta) {
  Gradient g;
  d_n_with_grad(ctx, vartheta, &g);
  return g;
}

}  // namespace mixreg
