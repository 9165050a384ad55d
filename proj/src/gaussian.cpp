#include "mixreg/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <sstream>

#include "mixreg/quadrature.hpp"
#include "mixreg/special.hpp"

namespace mixreg {

namespace {

// mixing the design through theta: theta . X ~ N(alpha + beta mu_x, beta^2 var_x)
struct MixedMoments {
  double mean1, var1;  // unknown component of Psi_theta
  double mean0, var0;  // known component
};

MixedMoments mixed(const GaussianModelSpec& spec, Theta theta) {
  const Theta ts = spec.vartheta_star.theta();
  double da = theta.alpha - ts.alpha, db = theta.beta - ts.beta;
  MixedMoments mm;
  mm.mean1 = -(da + db * spec.mu_x);
  mm.var1 = db * db * spec.var_x + spec.m;
  mm.mean0 = -(theta.alpha + theta.beta * spec.mu_x);
  mm.var0 = theta.beta * theta.beta * spec.var_x + spec.m0;
  return mm;
}

}  // namespace

double population_psi(const GaussianModelSpec& spec, Theta theta, double y) {
  spec.validate();
  auto mm = mixed(spec, theta);
  double p = spec.vartheta_star.p;
  double s1 = std::sqrt(mm.var1), s0 = std::sqrt(mm.var0);
  return p * norm_pdf((y - mm.mean1) / s1) / s1 + (1.0 - p) * norm_pdf((y - mm.mean0) / s0) / s0;
}

double population_F(const GaussianModelSpec& spec, Theta theta, double y) {
  auto mm = mixed(spec, theta);
  double p = spec.vartheta_star.p;
  return p * norm_cdf((y - mm.mean1) / std::sqrt(mm.var1)) +
         (1.0 - p) * norm_cdf((y - mm.mean0) / std::sqrt(mm.var0));
}

double population_J(const GaussianModelSpec& spec, Theta theta, double y) {
  auto mm = mixed(spec, theta);
  return norm_cdf((y - mm.mean0) / std::sqrt(mm.var0));
}

double population_H(const GaussianModelSpec& spec, const Vartheta& vartheta, double y) {
  if (!(vartheta.p > 0.0)) throw std::domain_error("population_H: p must be > 0");
  double p = vartheta.p;
  Theta th = vartheta.theta();
  double h1 = population_F(spec, th, y) / p - (1.0 - p) / p * population_J(spec, th, y);
  double h2 = 1.0 - population_F(spec, th, -y) / p + (1.0 - p) / p * population_J(spec, th, -y);
  return h1 - h2;
}

double population_d(const GaussianModelSpec& spec, const Distribution& q,
                    const Vartheta& vartheta) {
  spec.validate();
  double sq = std::sqrt(q.variance());
  double lo = q.mean() - 12.0 * sq, hi = q.mean() + 12.0 * sq;
  return simpson(
      [&](double y) {
        double h = population_H(spec, vartheta, y);
        return h * h * q.pdf(y);
      },
      lo, hi, 8193);
}

std::optional<Vartheta> spurious_solution(const GaussianModelSpec& spec) {
  spec.validate();
  const Vartheta& vs = spec.vartheta_star;
  if (vs.beta == 0.0) throw std::domain_error("spurious_solution: beta* must be nonzero");
  if (vs.p > 0.5) return std::nullopt;
  // the shadow is the (p, alpha, beta) making the half-half mixture of the two
  // transformed components even: variances match when the beta shift is
  // (m - m0)/(2 beta* var_x), and the means are then opposite when the alpha
  // shift is E(X) times the negated beta shift
  double shift = (spec.m0 - spec.m) / (2.0 * vs.beta * spec.var_x);
  return Vartheta{2.0 * vs.p, vs.alpha / 2.0 + spec.mu_x * shift, vs.beta / 2.0 - shift};
}

ConditionReport check_contrast_conditions(const GaussianModelSpec& spec) {
  spec.validate();
  const double tol = 1e-10;
  const Vartheta& vs = spec.vartheta_star;
  ConditionReport rep;
  rep.c1_value = 4.0 * std::pow(spec.mu_x, 3) + 3.0 * spec.mu_x * spec.ex2() + spec.ex3();
  rep.c1_pass = std::abs(rep.c1_value) > tol;

  double denom = vs.alpha + vs.beta * spec.mu_x;
  rep.c3_lhs = spec.m;
  if (std::abs(denom) <= tol) {
    rep.c3_defined = false;
    rep.c3_rhs = std::numeric_limits<double>::quiet_NaN();
    rep.c3_pass = false;
  } else {
    rep.c3_defined = true;
    double cubic = std::pow(vs.alpha, 3) + 3.0 * vs.alpha * vs.alpha * vs.beta * spec.mu_x +
                   3.0 * vs.alpha * vs.beta * vs.beta * spec.ex2() +
                   std::pow(vs.beta, 3) * spec.ex3();
    rep.c3_rhs = spec.m0 + cubic / (3.0 * denom);
    rep.c3_pass = std::abs(rep.c3_lhs - rep.c3_rhs) > tol;
  }
  return rep;
}

std::string ConditionReport::summary() const {
  std::ostringstream os;
  os << "(C i)   4E(X)^3 + 3E(X)E(X^2) + E(X^3) = " << c1_value << " -> "
     << (c1_pass ? "PASS" : "FAIL (warning: the contrast proof's p = p* branch is not covered; "
                            "estimation can still succeed)")
     << "\n";
  if (!c3_defined) {
    os << "(C iii) undefined (division by zero: alpha* + beta* E(X) = 0)\n";
  } else {
    os << "(C iii) m = " << c3_lhs << " vs m0 + cubic/3(alpha*+beta*E(X)) = " << c3_rhs << " -> "
       << (c3_pass ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

MomentSystemReport identifiability_moment_system(const GaussianModelSpec& spec, double x) {
  spec.validate();
  double t = theta_dot(spec.vartheta_star.theta(), x);
  double m1 = spec.m, m0 = spec.m0;
  MomentSystemReport rep;
  double denom = 3.0 * m1 + t * t - 3.0 * m0;
  if (std::abs(denom) < 1e-300 || t == 0.0) {
    rep.singular = true;
    rep.p2_over_p1 = rep.theta2_dot_x = rep.m2 = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  rep.singular = false;
  rep.p2_over_p1 = 2.0 * t * t / denom;
  rep.theta2_dot_x = t + (3.0 * m1 - t * t - 3.0 * m0) / (2.0 * t);
  rep.m2 = m1 + (m1 + t * t - m0) * (3.0 * m1 + t * t - 3.0 * m0) / (4.0 * t * t);
  return rep;
}

}  // namespace mixreg
