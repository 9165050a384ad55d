#pragma once

#include <span>
#include <vector>

#include "mixreg/dist.hpp"
#include "mixreg/kernel.hpp"
#include "mixreg/types.hpp"

namespace mixreg {

/// Residuals of the theta-transformation Y_i - (alpha + beta X_i).
struct ThetaTransformed {
  std::vector<double> y_theta;
  Theta theta;
};

ThetaTransformed theta_transform(const Sample& sample, Theta theta);

/// Kernel density estimate of the transformed data at t.
double kde_psi(const ThetaTransformed& data, double t, const Kernel& kernel, double b);
std::vector<double> kde_psi_grid(const ThetaTransformed& data, std::span<const double> ts,
                                 const Kernel& kernel, double b);

/// Smoothed empirical cdf (1/n) sum K_cdf((y - Y_i^theta)/b).
double smoothed_cdf(const ThetaTransformed& data, double y, const Kernel& kernel, double b);
std::vector<double> smoothed_cdf_grid(const ThetaTransformed& data, std::span<const double> ys,
                                      const Kernel& kernel, double b);

/// Monte-Carlo estimate of I_theta(z): (1/n) sum f0(z + theta . X_i).
double mc_I(const Sample& sample, Theta theta, const Distribution& f0, double z);
std::vector<double> mc_I_grid(const Sample& sample, Theta theta, const Distribution& f0,
                              std::span<const double> zs);

/// Monte-Carlo estimate of J_theta(y): (1/n) sum F0(y + theta . X_i).
double mc_J(const Sample& sample, Theta theta, const Distribution& f0, double y);
std::vector<double> mc_J_grid(const Sample& sample, Theta theta, const Distribution& f0,
                              std::span<const double> ys);

/// Nonparametric estimate of I_theta built from a frozen simulated f0-sample.
double sim_I_tilde(const Sample& sample, Theta theta, std::span<const double> eps0_sim,
                   const Kernel& kernel, double b, double t);
std::vector<double> sim_I_tilde_grid(const Sample& sample, Theta theta,
                                     std::span<const double> eps0_sim, const Kernel& kernel,
                                     double b, std::span<const double> ts);

/// Antiderivative of sim_I_tilde.
double sim_J_tilde(const Sample& sample, Theta theta, std::span<const double> eps0_sim,
                   const Kernel& kernel, double b, double y);
std::vector<double> sim_J_tilde_grid(const Sample& sample, Theta theta,
                                     std::span<const double> eps0_sim, const Kernel& kernel,
                                     double b, std::span<const double> ys);

}  // namespace mixreg
