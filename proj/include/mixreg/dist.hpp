#pragma once

#include <string>
#include <vector>

#include "mixreg/rng.hpp"

namespace mixreg {

/// Univariate distribution usable as error law, design law or weight law:
/// a Gaussian or a finite Gaussian mixture.
class Distribution {
 public:
  static Distribution gaussian(double mean, double variance);
  static Distribution gaussian_mixture(std::vector<double> weights,
                                       std::vector<double> means,
                                       std::vector<double> variances);

  double pdf(double t) const;
  double cdf(double t) const;
  double quantile(double u) const;
  double sample(Rng& rng) const;

  double mean() const;
  double variance() const;

  /// True when the density is even by construction.
  bool symmetric() const;

  std::size_t n_components() const { return weights_.size(); }

 private:
  Distribution() = default;
  std::vector<double> weights_;
  std::vector<double> means_;
  std::vector<double> variances_;
};

}  // namespace mixreg
