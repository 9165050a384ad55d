#include "mixreg/dist.hpp"

#include <cmath>
#include <stdexcept>

namespace mixreg {

Distribution Distribution::gaussian(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(mean) || !std::isfinite(variance))
    throw std::invalid_argument("gaussian: variance must be finite and > 0");
  Distribution d;
  d.weights_ = {1.0};
  d.means_ = {mean};
  d.variances_ = {variance};
  return d;
}

Distribution Distribution::gaussian_mixture(std::vector<double> weights,
                                            std::vector<double> means,
                                            std::vector<double> variances) {
  if (weights.empty() || weights.size() != means.size() || weights.size() != variances.size())
    throw std::invalid_argument("gaussian_mixture: component vectors must be non-empty and equal length");
  double total = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] > 0.0) || !(variances[j] > 0.0) || !std::isfinite(means[j]))
      throw std::invalid_argument("gaussian_mixture: weights and variances must be > 0, means finite");
    total += weights[j];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("gaussian_mixture: weights must sum to 1");
  Distribution d;
  d.weights_ = std::move(weights);
  d.means_ = std::move(means);
  d.variances_ = std::move(variances);
  return d;
}

double Distribution::pdf(double t) const {
  double v = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    double s = std::sqrt(variances_[j]);
    v += weights_[j] * norm_pdf((t - means_[j]) / s) / s;
  }
  return v;
}

double Distribution::cdf(double t) const {
  double v = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j)
    v += weights_[j] * norm_cdf((t - means_[j]) / std::sqrt(variances_[j]));
  return v;
}

double Distribution::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: u must be in (0,1)");
  if (weights_.size() == 1) return means_[0] + std::sqrt(variances_[0]) * norm_quantile(u);
  // bisection on the mixture cdf
  double lo = means_[0], hi = means_[0];
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    double s = std::sqrt(variances_[j]);
    lo = std::min(lo, means_[j] - 10.0 * s);
    hi = std::max(hi, means_[j] + 10.0 * s);
  }
  while (cdf(lo) > u) lo -= (hi - lo);
  while (cdf(hi) < u) hi += (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double Distribution::sample(Rng& rng) const {
  std::size_t j = 0;
  if (weights_.size() > 1) {
    double u = rng.uniform01(), acc = 0.0;
    for (; j + 1 < weights_.size(); ++j) {
      acc += weights_[j];
      if (u <= acc) break;
    }
  }
  double x = means_[j] + std::sqrt(variances_[j]) * rng.normal();
  if (!std::isfinite(x)) throw std::runtime_error("Distribution::sample produced a non-finite draw");
  return x;
}

double Distribution::mean() const {
  double m = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) m += weights_[j] * means_[j];
  return m;
}

double Distribution::variance() const {
  double m = mean(), v = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j)
    v += weights_[j] * (variances_[j] + (means_[j] - m) * (means_[j] - m));
  return v;
}

bool Distribution::symmetric() const {
  // even iff every component mean m has a matching component at -m with the
  // same weight and variance; covers the single centered Gaussian and the
  // lambda = 1/2 two-component case
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    bool matched = false;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (std::abs(means_[k] + means_[j]) < 1e-12 &&
          std::abs(weights_[k] - weights_[j]) < 1e-12 &&
          std::abs(variances_[k] - variances_[j]) < 1e-12) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace mixreg
