#include "amoeba/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amoeba {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  // round-off floor: once delta sits at rounding level, refining cannot help
  const double noise =
      64.0 * std::numeric_limits<double>::epsilon() *
      (std::abs(left) + std::abs(right) + std::abs(whole));
  if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= noise)
    return left + right + delta / 15.0;
  if (depth <= 0)
    throw NumericError("adaptive_simpson: tolerance not reached, residual " +
                       std::to_string(std::abs(delta) / 15.0));
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, a, b);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double integrate_with_splits(const std::function<double(double)>& f, double a,
                             double b, const std::vector<double>& splits,
                             double tol) {
  std::vector<double> pts{a};
  for (double p : splits)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  const double sub_tol = tol / static_cast<double>(pts.size() - 1);
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    total += adaptive_simpson(f, pts[i], pts[i + 1], sub_tol);
  return total;
}

double find_root_brent(const std::function<double(double)>& f, double a,
                       double b, double tol, int max_iter) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw NumericError("find_root_brent: root not bracketed");
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa, d = b - a;
  bool mflag = true;
  for (int it = 0; it < max_iter; ++it) {
    if (fb == 0.0 || std::abs(b - a) < tol) return b;
    double s;
    if (fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) +
          b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);
    }
    const double lo = (3.0 * a + b) / 4.0;
    const bool out = (s < std::min(lo, b) || s > std::max(lo, b));
    const bool slow = mflag ? std::abs(s - b) >= std::abs(b - c) / 2.0
                            : std::abs(s - b) >= std::abs(c - d) / 2.0;
    const bool tiny = mflag ? std::abs(b - c) < tol : std::abs(c - d) < tol;
    if (out || slow || tiny) {
      s = 0.5 * (a + b);
      mflag = true;
    } else {
      mflag = false;
    }
    const double fs = f(s);
    d = c;
    c = b;
    fc = fb;
    if (fa * fs < 0.0) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
  }
  return b;
}

}  // namespace amoeba
