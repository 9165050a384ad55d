#include "mixreg/estimators.hpp"

#include <stdexcept>

namespace mixreg {

namespace {

void check_bandwidth(double b) {
  if (!(b > 0.0)) throw std::domain_error("bandwidth must be > 0");
}

}  // namespace

ThetaTransformed theta_transform(const Sample& sample, Theta theta) {
  sample.validate();
  ThetaTransformed out;
  out.theta = theta;
  out.y_theta.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    out.y_theta[i] = sample.y[i] - (theta.alpha + theta.beta * sample.x[i]);
  return out;
}

double kde_psi(const ThetaTransformed& data, double t, const Kernel& kernel, double b) {
  check_bandwidth(b);
  double s = 0.0;
  for (double yi : data.y_theta) s += kernel.density((t - yi) / b);
  return s / (double(data.y_theta.size()) * b);
}

std::vector<double> kde_psi_grid(const ThetaTransformed& data, std::span<const double> ts,
                                 const Kernel& kernel, double b) {
  std::vector<double> out(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) out[k] = kde_psi(data, ts[k], kernel, b);
  return out;
}

double smoothed_cdf(const ThetaTransformed& data, double y, const Kernel& kernel, double b) {
  check_bandwidth(b);
  double s = 0.0;
  for (double yi : data.y_theta) s += kernel.cdf((y - yi) / b);
  return s / double(data.y_theta.size());
}

std::vector<double> smoothed_cdf_grid(const ThetaTransformed& data, std::span<const double> ys,
                                      const Kernel& kernel, double b) {
  std::vector<double> out(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) out[k] = smoothed_cdf(data, ys[k], kernel, b);
  return out;
}

double mc_I(const Sample& sample, Theta theta, const Distribution& f0, double z) {
  double s = 0.0;
  for (double xi : sample.x) s += f0.pdf(z + theta_dot(theta, xi));
  return s / double(sample.size());
}

std::vector<double> mc_I_grid(const Sample& sample, Theta theta, const Distribution& f0,
                              std::span<const double> zs) {
  std::vector<double> out(zs.size());
  for (std::size_t k = 0; k < zs.size(); ++k) out[k] = mc_I(sample, theta, f0, zs[k]);
  return out;
}

double mc_J(const Sample& sample, Theta theta, const Distribution& f0, double y) {
  double s = 0.0;
  for (double xi : sample.x) s += f0.cdf(y + theta_dot(theta, xi));
  return s / double(sample.size());
}

std::vector<double> mc_J_grid(const Sample& sample, Theta theta, const Distribution& f0,
                              std::span<const double> ys) {
  std::vector<double> out(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) out[k] = mc_J(sample, theta, f0, ys[k]);
  return out;
}

namespace {

void check_eps0(const Sample& sample, std::span<const double> eps0_sim) {
  if (eps0_sim.size() != sample.size())
    throw std::invalid_argument("simulated f0-sample length must match sample size");
}

}  // namespace

double sim_I_tilde(const Sample& sample, Theta theta, std::span<const double> eps0_sim,
                   const Kernel& kernel, double b, double t) {
  check_bandwidth(b);
  check_eps0(sample, eps0_sim);
  double s = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i)
    s += kernel.density((t - (theta_dot(theta, sample.x[i]) + eps0_sim[i])) / b);
  return s / (double(sample.size()) * b);
}

std::vector<double> sim_I_tilde_grid(const Sample& sample, Theta theta,
                                     std::span<const double> eps0_sim, const Kernel& kernel,
                                     double b, std::span<const double> ts) {
  std::vector<double> out(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k)
    out[k] = sim_I_tilde(sample, theta, eps0_sim, kernel, b, ts[k]);
  return out;
}

double sim_J_tilde(const Sample& sample, Theta theta, std::span<const double> eps0_sim,
                   const Kernel& kernel, double b, double y) {
  check_bandwidth(b);
  check_eps0(sample, eps0_sim);
  double s = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i)
    s += kernel.cdf((y - (theta_dot(theta, sample.x[i]) + eps0_sim[i])) / b);
  return s / double(sample.size());
}

std::vector<double> sim_J_tilde_grid(const Sample& sample, Theta theta,
                                     std::span<const double> eps0_sim, const Kernel& kernel,
                                     double b, std::span<const double> ys) {
  std::vector<double> out(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k)
    out[k] = sim_J_tilde(sample, theta, eps0_sim, kernel, b, ys[k]);
  return out;
}

}  // namespace mixreg
