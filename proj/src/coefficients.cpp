#include "amoeba/coefficients.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "amoeba/numerics.hpp"

namespace amoeba {

namespace {

constexpr double kPi = std::numbers::pi;

// The integrals are continuous in s from the right but the raw integrand is
// not defined at s = 0 for kinked nu (nu'(0) = sgn(0) = 0 would lose the
// sgn(cos t) factor); a tiny floor keeps the limit value.
constexpr double kSFloor = 1e-13;

double trig_weight(int k, double t) {
  switch (k) {
    case 1: return std::sin(t) * std::sin(t);
    case 2: return std::sin(t) * std::cos(t);
    default: return std::cos(t) * std::cos(t);
  }
}

// ---- L1 closed forms -------------------------------------------------------
//
// Derived by the Weierstrass substitution t = tan(theta/2); with
// sig = |sin a|, c = cos a, the substitution maps the integration interval to
// [-tb, tb], tb = c/(1+sig), and 1 + s cos(theta) to W/(1+t^2),
// W = (1+s) + (1-s) t^2, W(tb) = 2 (1 + s sig)/(1 + sig).

struct L1Vars {
  double sig, c, tb, W;
};

L1Vars l1_vars(double s, double alpha) {
  L1Vars v;
  v.sig = std::abs(std::sin(alpha));
  v.c = std::cos(alpha);
  v.tb = v.c / (1.0 + v.sig);
  v.W = 2.0 * (1.0 + s * v.sig) / (1.0 + v.sig);
  return v;
}

double l1_J1_generic(double s, double alpha) {
  const L1Vars v = l1_vars(s, alpha);
  const double D2 = 1.0 - s * s;
  double T;
  if (s < 1.0)
    T = 2.0 * std::atan(std::sqrt((1.0 - s) / (1.0 + s)) * v.tb) /
        std::pow(D2, 2.5);
  else
    T = 2.0 * std::atanh(std::sqrt((s - 1.0) / (s + 1.0)) * v.tb) /
        std::pow(s * s - 1.0, 2.5);
  const double W = v.W, a = 1.0 + s;
  const double R = 2.0 * v.tb *
                   (3.0 * W * W - 2.0 * a * (3.0 + 4.0 * s) * W +
                    8.0 * s * a * a) /
                   (3.0 * D2 * D2 * W * W * W);
  return T + R;
}

double l1_J3_generic(double s, double alpha) {
  const L1Vars v = l1_vars(s, alpha);
  const double D2 = 1.0 - s * s;
  double T;
  if (s < 1.0)
    T = (8.0 * s * s + 2.0) *
        std::atan(std::sqrt((1.0 - s) / (1.0 + s)) * v.tb) /
        std::pow(D2, 3.5);
  else
    T = -(8.0 * s * s + 2.0) *
        std::atanh(std::sqrt((s - 1.0) / (s + 1.0)) * v.tb) /
        std::pow(s * s - 1.0, 3.5);
  const double W = v.W, a = 1.0 + s;
  const double R = 2.0 * v.tb *
                   (-8.0 * s * a * a +
                    2.0 * a * (6.0 * s * s + 4.0 * s + 3.0) * W -
                    3.0 * (2.0 * s * s * s + 2.0 * s * s + 6.0 * s + 1.0) * W * W) /
                   (3.0 * D2 * D2 * D2 * W * W * W);
  return T + R;
}

// Exact power series about s = 1: with e = s - 1 and W = 2 + e (1 - t^2),
// 1/W^4 expands into sum_k C(k+3,3) (-e/2)^k (1-t^2)^k / 16 and the per-order
// angular integrals are polynomials in tb. Leading term reproduces the s = 1
// closed form; truncation error at |e| < 0.05 is below 1e-15.
double l1_series(int k, double s, double alpha) {
  const L1Vars v = l1_vars(s, alpha);
  const double e = s - 1.0;
  const int kmax = 14;
  // binomials C(j, i) up to j = kmax
  static thread_local std::vector<std::vector<double>> binom;
  if (binom.empty()) {
    binom.resize(kmax + 5);
    for (int j = 0; j < kmax + 5; ++j) {
      binom[j].assign(j + 1, 1.0);
      for (int i = 1; i < j; ++i)
        binom[j][i] = binom[j - 1][i - 1] + binom[j - 1][i];
    }
  }
  double total = 0.0, epow = 1.0;
  for (int kk = 0; kk <= kmax; ++kk) {
    // coefficients of (1-t^2)^m (1+t^2) t^p as a polynomial in t
    const int m = (k == 1) ? kk : kk + 2;
    const int p = (k == 1) ? 2 : 0;
    double integral = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double cj = ((j & 1) ? -1.0 : 1.0) * binom[m][j];
      // t^(2j+p) and t^(2j+p+2), integrated from 0 to tb
      const int d1 = 2 * j + p + 1, d2 = 2 * j + p + 3;
      integral += cj * (std::pow(v.tb, d1) / d1 + std::pow(v.tb, d2) / d2);
    }
    const double coef = binom[kk + 3][3] * ((k == 1) ? 1.0 : 0.25);
    total += coef * epow * integral;
    epow *= -e / 2.0;
  }
  return total;
}

double jtilde(const AmoebaMetric& metric, int k, double s) {
  // J_k(s, 0) with the closed form where available
  switch (metric.kind) {
    case MetricKind::L2: return J_closed_l2(k, s, 0.0);
    case MetricKind::L1: return J_closed_l1(k, s, 0.0);
    default: return J_quadrature(metric, k, s, 0.0);
  }
}

}  // namespace

double J_quadrature(const AmoebaMetric& metric, int k, double s, double alpha,
                    double tol) {
  if (s < 0.0) throw std::invalid_argument("J_quadrature: s must be >= 0");
  const double se = std::max(s, kSFloor);
  auto integrand = [&](double t) {
    const double x = se * std::cos(t);
    const double nu = metric.nu(x);
    return metric.nu_prime(x) / (nu * nu * nu * nu) * trig_weight(k, t);
  };
  const double a = alpha - 0.5 * kPi, b = alpha + 0.5 * kPi;
  // nu' may jump where cos t = 0; the rounded pi/2 lands a hair inside the
  // neighbouring piece, so each piece is evaluated with its ends nudged
  // inward to keep the sampled branch consistent.
  std::vector<double> pts{a};
  for (double p : {-1.5 * kPi, -0.5 * kPi, 0.5 * kPi, 1.5 * kPi})
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  const double sub_tol = tol / static_cast<double>(pts.size() - 1);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double p = pts[i], q = pts[i + 1];
    const double nudge = 1e-12;
    auto piece = [&](double t) {
      return integrand(std::clamp(t, p + nudge, q - nudge));
    };
    total += adaptive_simpson(piece, p, q, sub_tol);
  }
  return total;
}

double J_closed_l2(int k, double s, double alpha) {
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double q = 1.0 + s * s * sa * sa;
  const double q32 = q * std::sqrt(q);
  const double one_s2 = 1.0 + s * s;
  switch (k) {
    case 1: return (2.0 / 3.0) * s * ca * ca * ca / (one_s2 * q32);
    case 2: return (2.0 / 3.0) * s * sa * sa * sa / q32;
    default:
      return (2.0 / 3.0) * s * ca *
             (2.0 + sa * sa + 3.0 * s * s * sa * sa) /
             (one_s2 * one_s2 * q32);
  }
}

double J_closed_l1(int k, double s, double alpha) {
  if (s < 0.0) throw std::invalid_argument("J_closed_l1: s must be >= 0");
  if (k == 2) {
    const double sa = std::sin(alpha);
    const double sig = std::abs(sa);
    const double d = 1.0 + s * sig;
    return sa * sig * (3.0 + s * sig) / (3.0 * d * d * d);
  }
  if (std::abs(s - 1.0) < 0.05) return l1_series(k, s, alpha);
  return (k == 1) ? l1_J1_generic(s, alpha) : l1_J3_generic(s, alpha);
}

double J_coefficient(const AmoebaMetric& metric, int k, double s,
                     double alpha) {
  switch (metric.kind) {
    case MetricKind::L2: return J_closed_l2(k, s, alpha);
    case MetricKind::L1: return J_closed_l1(k, s, alpha);
    default: return J_quadrature(metric, k, s, alpha);
  }
}

double K_integral(const AmoebaMetric& metric, double s) {
  if (s < 0.0) throw std::invalid_argument("K_integral: s must be >= 0");
  if (metric.kind == MetricKind::L2) return 2.0 * kPi / std::sqrt(1.0 + s * s);
  auto integrand = [&](double t) {
    const double nu = metric.nu(s * std::cos(t));
    return 1.0 / (nu * nu);
  };
  return integrate_with_splits(integrand, -kPi, kPi,
                               {-0.5 * kPi, 0.5 * kPi}, 1e-10);
}

double selfsnakes_g(const AmoebaMetric& metric, double beta, double s) {
  return 1.0 - 1.5 * beta * s * jtilde(metric, 1, beta * s);
}

double selfsnakes_h(const AmoebaMetric& metric, double beta, double s) {
  return -1.5 * beta * s * jtilde(metric, 3, beta * s);
}

double g_jmiv11(const AmoebaMetric& metric, double beta, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("g_jmiv11 requires s > 0");
  const double q0 = 1.0 / (beta * s);
  auto psi = [&](double q) { return q * metric.nu(1.0 / q); };
  const double psi0 = psi(q0);

  auto psi_inv = [&](double y) -> double {
    if (metric.kind == MetricKind::L2) return std::sqrt(y * y - 1.0);
    // psi is increasing; bracket [lo, y/nu(0)] and shrink lo until it holds
    const double hi = y / metric.nu(0.0);
    double lo = std::min(1e-8, 0.5 * hi);
    int guard = 0;
    while (psi(lo) > y) {
      lo *= 0.1;
      if (++guard > 300)
        throw NumericError("g_jmiv11: psi^{-1} bracket failure");
    }
    if (psi(hi) < y) throw NumericError("g_jmiv11: psi^{-1} bracket failure");
    return find_root_brent([&](double q) { return psi(q) - y; }, lo, hi,
                           1e-12 * (1.0 + hi));
  };

  // I1 = int_0^1 xi^2 sqrt(psi^{-1}(psi(q0)/xi)^2 - q0^2) dxi with the
  // substitution xi = 1 - t^2 to flatten the sqrt endpoint at xi = 1.
  auto integrand = [&](double t) {
    const double xi = 1.0 - t * t;
    if (xi <= 0.0) return 0.0;
    const double pinv = psi_inv(psi0 / xi);
    const double inner = std::max(pinv * pinv - q0 * q0, 0.0);
    return 2.0 * t * xi * xi * std::sqrt(inner);
  };
  const double I1 = adaptive_simpson(integrand, 0.0, 1.0, 1e-11);
  return 3.0 * I1 / (beta * beta * s * s * psi0 * psi0 * psi0);
}

}  // namespace amoeba
