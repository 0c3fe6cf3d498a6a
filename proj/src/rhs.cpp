#include "amoeba/rhs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amoeba/coefficients.hpp"

namespace amoeba {

// A contrast scale beta in the metric is equivalent to replacing f by beta*f,
// so |grad f| enters the coefficients as beta*s and the f-Hessian terms pick
// up one factor beta.

double aac_rhs(const AmoebaMetric& metric, const LocalFrame& frame) {
  const double nu0 = metric.nu(0.0);
  if (frame.singular_f) return frame.u_xixi / (nu0 * nu0);
  if (frame.singular_u) return 0.0;  // level-line direction undefined
  const double b = metric.beta;
  const double s = b * frame.grad_f_mag;
  const double a = frame.alpha;
  const double nu_a = metric.nu(s * std::sin(a));
  const double J1 = J_coefficient(metric, 1, s, a);
  const double J2 = J_coefficient(metric, 2, s, a);
  const double J3 = J_coefficient(metric, 3, s, a);
  return frame.u_xixi / (nu_a * nu_a) -
         1.5 * nu_a * frame.grad_u_mag * b *
             (J1 * frame.f_zz + 2.0 * J2 * frame.f_zx + J3 * frame.f_xx);
}

double aac_rhs_l2(const LocalFrame& frame) {
  if (frame.singular_f) return frame.u_xixi;
  if (frame.singular_u) return 0.0;
  const double s = frame.grad_f_mag;
  const double sa = std::sin(frame.alpha), ca = std::cos(frame.alpha);
  const double q = 1.0 + s * s * sa * sa;
  const double one_s2 = 1.0 + s * s;
  return frame.u_xixi / q -
         s * frame.grad_u_mag / q *
             (frame.f_zz * ca * ca * ca / one_s2 +
              2.0 * frame.f_zx * sa * sa * sa +
              frame.f_xx * ca * (2.0 + sa * sa + 3.0 * s * s * sa * sa) /
                  (one_s2 * one_s2));
}

double gac_rhs_rotsym(const AmoebaMetric& metric, const LocalFrame& frame) {
  const double b = metric.beta;
  const double s = frame.grad_f_mag;
  const double g = selfsnakes_g(metric, b, s);
  const double J3t = J_coefficient(metric, 3, b * s, 0.0);
  return g * frame.u_xixi - 1.5 * b * J3t * frame.f_xx * frame.grad_u_mag;
}

double ssn_rhs(const AmoebaMetric& metric, double beta, double grad_u_mag,
               double u_xixi, double u_etaeta) {
  return selfsnakes_g(metric, beta, grad_u_mag) * u_xixi +
         selfsnakes_h(metric, beta, grad_u_mag) * u_etaeta;
}

double force_term(const AmoebaMetric& metric, BiasKind kind, double gamma,
                  const LocalFrame& frame) {
  const double s = metric.beta * frame.grad_f_mag;
  const double nu_a = metric.nu(s * std::sin(frame.alpha));
  const double gu = frame.grad_u_mag;
  switch (kind) {
    case BiasKind::None: return 0.0;
    case BiasKind::FixedOffset: return gamma * nu_a * gu;
    case BiasKind::Quantile:
      return gamma * nu_a * K_integral(metric, s) /
             (2.0 * std::numbers::pi) * gu;
    case BiasKind::Quadratic: {
      const double nus = metric.nu(s);
      return gamma * nu_a / (nus * nus) * gu;
    }
  }
  throw std::logic_error("force_term: bad bias kind");
}

ContourRadii contour_radius(const AmoebaMetric& metric, double rho, double f_v,
                            double f_vv) {
  if (!(rho > 0.0)) throw std::invalid_argument("contour_radius: rho > 0");
  const double b = metric.beta;
  const double nu = metric.nu(b * f_v);
  const double corr =
      rho * rho * b * metric.nu_prime(b * f_v) * f_vv / (2.0 * nu * nu * nu);
  return {rho / nu - corr, rho / nu + corr};
}

}  // namespace amoeba
