#pragma once

#include "amoeba/bias.hpp"
#include "amoeba/field.hpp"
#include "amoeba/metric.hpp"

namespace amoeba {

/// Right-hand side of the amoeba-active-contour limit PDE,
///   u_t = u_xixi / nu(|grad f| sin a)^2
///         - (3/2) nu(|grad f| sin a) |grad u| (J1 f_zz + 2 J2 f_zx + J3 f_xx).
/// At singular f-gradients the evolution collapses to u_xixi / nu(0)^2.
double aac_rhs(const AmoebaMetric& metric, const LocalFrame& frame);

/// The L2 specialisation evaluated directly from its own closed form
/// (independent route; must agree with aac_rhs under the L2 metric).
double aac_rhs_l2(const LocalFrame& frame);

/// Geodesic-active-contour right-hand side for rotationally symmetric f, u
/// (alpha = 0, f_zx = 0, u_xixi/|grad u| = f_zz/|grad f|):
///   g(s) u_xixi - (3/2) J3(s,0) f_xx |grad u|, g(s) = 1 - (3/2) s J1(s,0).
double gac_rhs_rotsym(const AmoebaMetric& metric, const LocalFrame& frame);

/// Self-snakes right-hand side g(|grad u|) u_xixi + h(|grad u|) u_etaeta
/// (the f = beta u specialisation).
double ssn_rhs(const AmoebaMetric& metric, double beta, double grad_u_mag,
               double u_xixi, double u_etaeta);

/// PDE force summand induced by a biased rank selection:
///   fixed offset: gamma nu_a |grad u|
///   quantile:     gamma nu_a K(|grad f|)/(2 pi) |grad u|
///   quadratic:    gamma nu_a / nu(|grad f|)^2 |grad u|
/// with nu_a = nu(|grad f| sin alpha).
double force_term(const AmoebaMetric& metric, BiasKind kind, double gamma,
                  const LocalFrame& frame);

struct ContourRadii {
  double z_plus = 0.0;
  double z_minus = 0.0;
};

/// Second-order contour radii along a ray with directional derivatives
/// f_v, f_vv: z+- = rho/nu(beta f_v) -+ rho^2 beta nu'(beta f_v) f_vv /
/// (2 nu(beta f_v)^3).
ContourRadii contour_radius(const AmoebaMetric& metric, double rho, double f_v,
                            double f_vv);

}  // namespace amoeba
