#pragma once

#include <optional>
#include <string>

#include "mixreg/dist.hpp"
#include "mixreg/types.hpp"

namespace mixreg {

/// Fully parametric Gaussian instance used as a closed-form oracle:
/// f = N(0, m), f0 = N(0, m0), design = N(mu_x, var_x).
struct GaussianModelSpec {
  double m;
  double m0;
  double mu_x;
  double var_x;
  Vartheta vartheta_star;

  void validate() const {
    if (!(m > 0.0 && m0 > 0.0 && var_x > 0.0))
      throw std::invalid_argument("GaussianModelSpec: variances must be > 0");
    vartheta_star.validate();
  }

  double ex2() const { return mu_x * mu_x + var_x; }
  double ex3() const { return mu_x * mu_x * mu_x + 3.0 * mu_x * var_x; }
};

/// Closed-form density of the theta-transformed data (a two-component
/// Gaussian mixture).
double population_psi(const GaussianModelSpec& spec, Theta theta, double y);

/// Closed-form F_theta (cdf of the transformed data) and J_theta (cdf of the
/// transformed known component).
double population_F(const GaussianModelSpec& spec, Theta theta, double y);
double population_J(const GaussianModelSpec& spec, Theta theta, double y);

/// Population H = H1 - H2 built from the closed-form cdfs.
double population_H(const GaussianModelSpec& spec, const Vartheta& vartheta, double y);

/// Population contrast d(vartheta) = int H^2 dQ by quadrature.
double population_d(const GaussianModelSpec& spec, const Distribution& q,
                    const Vartheta& vartheta);

/// The second zero of the population contrast when p* <= 1/2:
/// (2p*, alpha*/2 + E(X)(m0-m)/(2 beta* var_x), beta*/2 + (m-m0)/(2 beta* var_x)).
std::optional<Vartheta> spurious_solution(const GaussianModelSpec& spec);

struct ConditionReport {
  double c1_value;           // 4E(X)^3 + 3E(X)E(X^2) + E(X^3)
  bool c1_pass;
  double c3_lhs;             // m
  double c3_rhs;             // m0 + cubic moment ratio
  bool c3_pass;
  bool c3_defined;           // false when alpha* + beta* E(X) = 0
  std::string summary() const;
};

/// Numeric checks of contrast conditions (C) i and iii. A (C) i failure is a
/// warning only: the standard E(X)=0 study designs violate it and still
/// estimate in practice.
ConditionReport check_contrast_conditions(const GaussianModelSpec& spec);

struct MomentSystemReport {
  double p2_over_p1;
  double theta2_dot_x;
  double m2;
  bool singular;  // denominator 3m1 + (theta1.x)^2 - 3m0 vanished
};

/// Alternative-solution triple of the conditional moment system, evaluated at
/// a design point x; its x-dependence demonstrates identifiability.
MomentSystemReport identifiability_moment_system(const GaussianModelSpec& spec, double x);

}  // namespace mixreg
