#pragma once

#include "amoeba/metric.hpp"

namespace amoeba {

/// Angular coefficients of the amoeba-median limit PDE: integrals of
/// nu'(s cos t)/nu(s cos t)^4 against sin^2 t (k=1), sin t cos t (k=2),
/// cos^2 t (k=3) over [alpha - pi/2, alpha + pi/2]. J1, J3 are even in
/// alpha; J2 is odd. At s = 0 the s -> 0+ limit is used (relevant for
/// metrics with a |.| kink such as L1).
double J_quadrature(const AmoebaMetric& metric, int k, double s, double alpha,
                    double tol = 1e-10);

/// Closed forms for the L2 metric, valid for all alpha.
double J_closed_l2(int k, double s, double alpha);

/// Closed forms for the L1 metric. The s > 1 / s < 1 branches meet a power
/// series around s = 1 (band |s-1| < 0.05) whose leading term is the exact
/// s = 1 formula; this keeps full double precision through the branch point.
double J_closed_l1(int k, double s, double alpha);

/// Closed form where the metric has one, quadrature otherwise.
double J_coefficient(const AmoebaMetric& metric, int k, double s, double alpha);

/// Structuring-element area integral K(s) = int_{-pi}^{pi} dt/nu(s cos t)^2;
/// |A| = rho^2 K(s)/2. Closed form 2 pi / sqrt(1+s^2) for L2.
double K_integral(const AmoebaMetric& metric, double s);

/// Edge-stopping function of the self-snakes limit of iterated amoeba median
/// filtering: g(s) = 1 - (3/2) beta s J1(beta s, 0).
double selfsnakes_g(const AmoebaMetric& metric, double beta, double s);

/// Companion coefficient h(s) = -(3/2) beta s J3(beta s, 0); satisfies
/// h(s) = s g'(s).
double selfsnakes_h(const AmoebaMetric& metric, double beta, double s);

/// The same edge-stopping function computed along the independent route
/// through psi(q) = q nu(1/q) and the quantile integral I1 (level-line
/// measurement form). psi^{-1} is analytic for L2, bracketed root-finding
/// otherwise. Requires s > 0.
double g_jmiv11(const AmoebaMetric& metric, double beta, double s);

}  // namespace amoeba
