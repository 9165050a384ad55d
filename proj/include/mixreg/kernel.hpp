#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixreg/special.hpp"

namespace mixreg {

enum class KernelKind { Triangular, Gaussian };

/// Even kernel density with exact antiderivative.
struct Kernel {
  KernelKind kind = KernelKind::Triangular;

  double density(double t) const {
    if (kind == KernelKind::Triangular) {
      double a = std::abs(t);
      return a <= 1.0 ? 1.0 - a : 0.0;
    }
    return norm_pdf(t);
  }

  /// Antiderivative of the kernel; piecewise exact for the triangular case.
  double cdf(double t) const {
    if (kind == KernelKind::Triangular) {
      if (t <= -1.0) return 0.0;
      if (t >= 1.0) return 1.0;
      if (t <= 0.0) return 0.5 * (1.0 + t) * (1.0 + t);
      return 1.0 - 0.5 * (1.0 - t) * (1.0 - t);
    }
    return norm_cdf(t);
  }

  double second_moment() const {
    return kind == KernelKind::Triangular ? 1.0 / 6.0 : 1.0;
  }

  static Kernel triangular() { return {KernelKind::Triangular}; }
  static Kernel gaussian() { return {KernelKind::Gaussian}; }
};

enum class BandwidthKind { Paper, Fixed, Power };

/// Bandwidth rule b_n. The default ("paper") rule is
/// b_n = sqrt(1 + 4 p (1-p)) (4/(3n))^{1/5}; the working p defaults to 1/2
/// (conservative oversmoothing) since p is itself being estimated.
struct BandwidthRule {
  BandwidthKind kind = BandwidthKind::Paper;
  double p = 0.5;       // Paper
  double b = 0.1;       // Fixed
  double c = 1.0;       // Power: b_n = c n^{-exponent}
  double exponent = 0.2;

  double value(std::size_t n) const {
    double bn;
    switch (kind) {
      case BandwidthKind::Paper:
        bn = std::sqrt(1.0 + 4.0 * p * (1.0 - p)) * std::pow(4.0 / (3.0 * double(n)), 0.2);
        break;
      case BandwidthKind::Fixed:
        bn = b;
        break;
      case BandwidthKind::Power:
        bn = c * std::pow(double(n), -exponent);
        break;
      default:
        bn = 0.0;
    }
    if (!(bn > 0.0)) throw std::domain_error("BandwidthRule: bandwidth must be > 0");
    return bn;
  }

  /// Decay checks: b_n -> 0 and n b_n -> inf are errors when violated;
  /// sqrt(n) b_n^2 -> 0 failing only yields a warning (the default rule,
  /// b_n ~ n^{-1/5}, does not satisfy it either).
  std::vector<std::string> validate() const {
    std::vector<std::string> warnings;
    double e;
    switch (kind) {
      case BandwidthKind::Paper:
        e = 0.2;
        break;
      case BandwidthKind::Fixed:
        warnings.push_back("fixed bandwidth does not vanish with n");
        return warnings;
      case BandwidthKind::Power:
        e = exponent;
        break;
      default:
        e = 0.0;
    }
    if (!(e > 0.0)) warnings.push_back("bandwidth does not decay (b_n -> 0 fails)");
    if (!(e < 1.0)) warnings.push_back("n b_n -> infinity fails");
    if (!(e > 0.25)) warnings.push_back("sqrt(n) b_n^2 = o(1) fails for this exponent");
    return warnings;
  }

  static BandwidthRule paper(double working_p = 0.5) {
    BandwidthRule r;
    r.kind = BandwidthKind::Paper;
    r.p = working_p;
    return r;
  }
  static BandwidthRule fixed(double b) {
    BandwidthRule r;
    r.kind = BandwidthKind::Fixed;
    r.b = b;
    return r;
  }
  static BandwidthRule power(double c, double e) {
    BandwidthRule r;
    r.kind = BandwidthKind::Power;
    r.c = c;
    r.exponent = e;
    return r;
  }
};

}  // namespace mixreg
