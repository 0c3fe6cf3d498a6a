#pragma once

#include <vector>

#include "amoeba/field.hpp"
#include "amoeba/metric.hpp"

namespace amoeba {

struct OracleConfig {
  int rays = 720;          // polar directions
  double root_tol = 1e-12; // relative Brent tolerance for contour radii
};

struct OracleResult {
  double mu = 0.0;      // (biased) median of u over the amoeba
  double area = 0.0;    // measured |A|
  double delta1 = 0.0;  // predicted asymmetry imbalance -rho^3 (J . Hf)
  double delta2 = 0.0;  // predicted curvature imbalance (2/3) kappa rho^3/nu^3
};

/// Space-continuous amoeba median around x0: the structuring element is built
/// exactly (per-ray arc-length root, straight-path metric), and mu is the
/// u-value with Area{u <= mu} = |A|/2 + delta_area. delta_area = 0 gives the
/// exact continuous median; mu is nondecreasing in delta_area. Throws when
/// |grad u(x0)| is singular (the median shift is undefined there).
OracleResult continuous_median_oracle(const PolyField& f, const PolyField& u,
                                      const AmoebaMetric& metric, double rho,
                                      Vec2 x0, double delta_area,
                                      const OracleConfig& cfg = {});

struct ConvergenceReport {
  std::vector<double> rho_list;
  std::vector<double> lhs;     // 6 (mu - u(x0)) / rho^2 per rho
  std::vector<double> error;   // |lhs - rhs|
  std::vector<double> order;   // observed order per consecutive rho pair
  std::vector<double> delta1;  // diagnostics per rho
  std::vector<double> delta2;
  double rhs = 0.0;            // analytic right-hand side at x0
  double final_rel_error = 0.0;
  bool passed = false;
};

/// Default relative-error gate at the smallest radius.
inline constexpr double kTolTheorem = 0.05;

/// Measures 6 (mu - u(x0)) / rho^2 against the analytic PDE right-hand side
/// over a decreasing radius list. Passes when the error decreases with rho
/// and the smallest-radius relative error is within tol.
ConvergenceReport verify_theorem(const PolyField& f, const PolyField& u,
                                 const AmoebaMetric& metric, Vec2 x0,
                                 const std::vector<double>& rho_list,
                                 double tol = kTolTheorem,
                                 const OracleConfig& cfg = {});

}  // namespace amoeba
