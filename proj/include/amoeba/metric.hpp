#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace amoeba {

enum class MetricKind { L1, L2, Custom };

/// Amoeba metric: spatial-tonal norm nu with contrast scale beta.
/// nu must be even, nondecreasing on [0, inf), with nu(0) > 0;
/// L1: nu(s) = 1 + |s|, L2: nu(s) = sqrt(1 + s^2). Custom metrics supply
/// nu together with its derivative (no symbolic differentiation).
struct AmoebaMetric {
  MetricKind kind = MetricKind::L2;
  double beta = 1.0;
  std::function<double(double)> custom_nu;
  std::function<double(double)> custom_nu_prime;

  double nu(double s) const {
    switch (kind) {
      case MetricKind::L1: return 1.0 + std::abs(s);
      case MetricKind::L2: return std::sqrt(1.0 + s * s);
      default: return custom_nu(s);
    }
  }

  double nu_prime(double s) const {
    switch (kind) {
      case MetricKind::L1: return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
      case MetricKind::L2: return s / std::sqrt(1.0 + s * s);
      default: return custom_nu_prime(s);
    }
  }

  static AmoebaMetric l1(double beta = 1.0) {
    check_beta(beta);
    return AmoebaMetric{MetricKind::L1, beta, nullptr, nullptr};
  }
  static AmoebaMetric l2(double beta = 1.0) {
    check_beta(beta);
    return AmoebaMetric{MetricKind::L2, beta, nullptr, nullptr};
  }
  static AmoebaMetric custom(std::function<double(double)> nu,
                             std::function<double(double)> nu_prime,
                             double beta = 1.0) {
    check_beta(beta);
    if (!nu || !nu_prime)
      throw std::invalid_argument("custom metric requires nu and nu'");
    return AmoebaMetric{MetricKind::Custom, beta, std::move(nu),
                        std::move(nu_prime)};
  }

 private:
  static void check_beta(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  }
};

/// Cost of one graph edge: the one-segment evaluation of the amoeba curve
/// length, spatial * nu(beta * df / spatial). Symmetric in the sign of df.
inline double edge_weight(const AmoebaMetric& m, double spatial, double df) {
  return spatial * m.nu(m.beta * df / spatial);
}

}  // namespace amoeba
