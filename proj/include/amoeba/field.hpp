#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace amoeba {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

/// Symmetric 2x2 matrix (Hessian).
struct Mat2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;
  double quad(Vec2 v) const {
    return xx * v.x * v.x + 2.0 * xy * v.x * v.y + yy * v.y * v.y;
  }
  double bilinear(Vec2 a, Vec2 b) const {
    return xx * a.x * b.x + xy * (a.x * b.y + a.y * b.x) + yy * a.y * b.y;
  }
};

/// 2D scalar grid with uniform spacing; row-major storage, index y*width+x.
/// Holds both pilot images f and evolving level-set functions u.
struct ScalarField {
  int width = 0;
  int height = 0;
  double spacing = 1.0;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(int w, int h, double spacing_ = 1.0, double fill = 0.0);

  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  double& at(int x, int y) { return values[idx(x, y)]; }
  double at(int x, int y) const { return values[idx(x, y)]; }

  /// Value with replicated (Neumann) boundary indices.
  double clamped(int x, int y) const;

  // Central-difference stencils; boundary by replication.
  double dx(int x, int y) const;
  double dy(int x, int y) const;
  double dxx(int x, int y) const;
  double dyy(int x, int y) const;
  double dxy(int x, int y) const;  // (f[+,+]-f[+,-]-f[-,+]+f[-,-])/(4h^2)

  Vec2 gradient(int x, int y) const { return {dx(x, y), dy(x, y)}; }
  Mat2 hessian(int x, int y) const {
    return {dxx(x, y), dxy(x, y), dyy(x, y)};
  }

  double min_value() const;
  double max_value() const;

  /// Throws if dimensions < 3 or any value is non-finite.
  void validate() const;

  /// Samples fn(x, y) in grid coordinates (pixel centers, scaled by spacing).
  static ScalarField sample(int w, int h, double spacing,
                            const std::function<double(double, double)>& fn);
};

/// Bivariate polynomial of total degree <= 2 with exact derivatives;
/// the analytic test model for the continuous-domain machinery.
struct PolyField {
  double c00 = 0.0, c10 = 0.0, c01 = 0.0;
  double c20 = 0.0, c11 = 0.0, c02 = 0.0;

  double value(Vec2 p) const {
    return c00 + c10 * p.x + c01 * p.y + c20 * p.x * p.x + c11 * p.x * p.y +
           c02 * p.y * p.y;
  }
  Vec2 gradient(Vec2 p) const {
    return {c10 + 2.0 * c20 * p.x + c11 * p.y,
            c01 + c11 * p.x + 2.0 * c02 * p.y};
  }
  Mat2 hessian() const { return {2.0 * c20, c11, 2.0 * c02}; }

  /// True if the value depends only on |x| (radial about the origin).
  bool radial() const {
    return c10 == 0.0 && c01 == 0.0 && c11 == 0.0 && c20 == c02;
  }

  /// Coefficients of p(R(angle) x): the same field in a rotated frame.
  PolyField rotated(double angle) const;
};

/// All local differential quantities entering the PDE right-hand sides,
/// expressed in the gradient-aligned frames of f ((zeta, chi)) and
/// u ((xi, eta)). alpha is the counterclockwise angle from grad f to grad u.
struct LocalFrame {
  double grad_f_mag = 0.0;
  double grad_u_mag = 0.0;
  double alpha = 0.0;  // undefined (0) when singular_f or singular_u
  double f_zz = 0.0;   // f_{zeta zeta}
  double f_zx = 0.0;   // f_{zeta chi}
  double f_xx = 0.0;   // f_{chi chi}
  double u_xixi = 0.0;
  bool singular_f = false;  // |grad f| < kEpsSingular
  bool singular_u = false;
};

/// Gradient threshold below which directional frames are undefined.
inline constexpr double kEpsSingular = 1e-8;

/// Builds a LocalFrame from raw gradients and Hessians.
LocalFrame frame_from_derivatives(Vec2 grad_f, Mat2 hess_f, Vec2 grad_u,
                                  Mat2 hess_u);

/// Frame from grid fields at pixel (x, y); interior pixels use the exact
/// central stencils, boundary pixels fall back to replicated neighbours.
LocalFrame local_frame(const ScalarField& f, const ScalarField& u, int x,
                       int y);

/// Frame from analytic polynomial fields at point p (exact).
LocalFrame local_frame(const PolyField& f, const PolyField& u, Vec2 p);

}  // namespace amoeba
