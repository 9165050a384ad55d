#include "mixreg/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace mixreg {

Sample simulate(std::size_t n, const Vartheta& vartheta_star, const Distribution& f0,
                const Distribution& f1, const Distribution& design, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
  vartheta_star.validate();

  Rng rng_design(derive_seed(seed, "design"));
  Rng rng_labels(derive_seed(seed, "labels"));
  Rng rng_eps0(derive_seed(seed, "errors0"));
  Rng rng_eps1(derive_seed(seed, "errors1"));

  Sample s;
  s.x.resize(n);
  s.y.resize(n);
  s.u = std::vector<std::uint8_t>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double xi;
    try {
      xi = design.sample(rng_design);
    } catch (const std::runtime_error&) {
      throw std::runtime_error("simulate: non-finite draw from design distribution");
    }
    bool contaminated = rng_labels.uniform01() <= vartheta_star.p;
    double yi;
    if (contaminated) {
      try {
        yi = vartheta_star.alpha + vartheta_star.beta * xi + f1.sample(rng_eps1);
      } catch (const std::runtime_error&) {
        throw std::runtime_error("simulate: non-finite draw from f1");
      }
    } else {
      try {
        yi = f0.sample(rng_eps0);
      } catch (const std::runtime_error&) {
        throw std::runtime_error("simulate: non-finite draw from f0");
      }
    }
    s.x[i] = xi;
    s.y[i] = yi;
    (*s.u)[i] = contaminated ? 1 : 0;
  }
  return s;
}

Distribution asymmetric_error_dist(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("asymmetric_error_dist: lambda must be in (0,1)");
  const double var = 0.5;  // component scale 1/sqrt(2): unit total variance at lambda = 1/2
  return Distribution::gaussian_mixture({lambda, 1.0 - lambda},
                                        {-0.7, 0.7 * lambda / (1.0 - lambda)}, {var, var});
}

Sample simulate_asymmetric(std::size_t n, double p_star, double beta_star, double lambda,
                           const Distribution& design, std::uint64_t seed) {
  Vartheta v{p_star, 0.0, beta_star};
  return simulate(n, v, Distribution::gaussian(0.0, 1.0), asymmetric_error_dist(lambda),
                  design, seed);
}

std::vector<double> sample_weight_points(std::size_t n, const Distribution& q,
                                         std::uint64_t seed) {
  Rng rng(derive_seed(seed, "weight_points"));
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = q.sample(rng);
  return v;
}

Sample center(const Sample& sample, double a0, double b0) {
  sample.validate();
  Sample out = sample;
  for (std::size_t i = 0; i < out.size(); ++i) out.y[i] -= a0 + b0 * out.x[i];
  return out;
}

}  // namespace mixreg
