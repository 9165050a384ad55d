#pragma once

#include <cstdint>

#include "mixreg/dist.hpp"
#include "mixreg/types.hpp"

namespace mixreg {

/// Draw n observations: Y = eps0 with probability 1-p, else alpha + beta X + eps1.
/// Design, errors and labels use independent streams split from `seed`.
Sample simulate(std::size_t n, const Vartheta& vartheta_star, const Distribution& f0,
                const Distribution& f1, const Distribution& design, std::uint64_t seed);

/// Error law of the asymmetry robustness study: the two-component mixture
/// lambda N(-0.7, sd 1/sqrt(2)) + (1-lambda) N(0.7 lambda/(1-lambda), sd 1/sqrt(2)).
/// Mean 0 for every lambda in (0,1); variance 1/2 + 0.49 lambda/(1-lambda),
/// i.e. ~1 at lambda = 1/2 (mimicking the unit-variance symmetric baseline).
Distribution asymmetric_error_dist(double lambda);

Sample simulate_asymmetric(std::size_t n, double p_star, double beta_star, double lambda,
                           const Distribution& design, std::uint64_t seed);

/// n iid draws from the instrumental weight distribution Q; frozen for the
/// lifetime of an estimation run.
std::vector<double> sample_weight_points(std::size_t n, const Distribution& q,
                                         std::uint64_t seed);

/// Pre-centering convenience for the model with known component-0 regression:
/// Y_i <- Y_i - (a0 + b0 X_i).
Sample center(const Sample& sample, double a0, double b0);

}  // namespace mixreg
