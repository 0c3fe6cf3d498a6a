#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace amoeba {

/// Thrown when an adaptive quadrature or root bracket fails to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

/// Integrates f over [a, b], splitting the interval at the given interior
/// points (integrand kinks). Points outside (a, b) are ignored.
double integrate_with_splits(const std::function<double(double)>& f, double a,
                             double b, const std::vector<double>& splits,
                             double tol);

/// Brent root finder on [a, b]; requires f(a) and f(b) of opposite sign.
double find_root_brent(const std::function<double(double)>& f, double a,
                       double b, double tol, int max_iter = 200);

/// Rounds half away from zero (symmetric treatment of +/- offsets).
inline long long round_half_away(double x) { return std::llround(x); }

}  // namespace amoeba
