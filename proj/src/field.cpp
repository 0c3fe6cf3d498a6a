#include "amoeba/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amoeba {

ScalarField::ScalarField(int w, int h, double spacing_, double fill)
    : width(w), height(h), spacing(spacing_) {
  if (w < 3 || h < 3)
    throw std::invalid_argument("ScalarField needs width, height >= 3");
  if (!(spacing_ > 0.0))
    throw std::invalid_argument("ScalarField spacing must be > 0");
  values.assign(static_cast<std::size_t>(w) * h, fill);
}

double ScalarField::clamped(int x, int y) const {
  x = std::clamp(x, 0, width - 1);
  y = std::clamp(y, 0, height - 1);
  return at(x, y);
}

double ScalarField::dx(int x, int y) const {
  return (clamped(x + 1, y) - clamped(x - 1, y)) / (2.0 * spacing);
}

double ScalarField::dy(int x, int y) const {
  return (clamped(x, y + 1) - clamped(x, y - 1)) / (2.0 * spacing);
}

double ScalarField::dxx(int x, int y) const {
  return (clamped(x + 1, y) - 2.0 * at(x, y) + clamped(x - 1, y)) /
         (spacing * spacing);
}

double ScalarField::dyy(int x, int y) const {
  return (clamped(x, y + 1) - 2.0 * at(x, y) + clamped(x, y - 1)) /
         (spacing * spacing);
}

double ScalarField::dxy(int x, int y) const {
  return (clamped(x + 1, y + 1) - clamped(x + 1, y - 1) -
          clamped(x - 1, y + 1) + clamped(x - 1, y - 1)) /
         (4.0 * spacing * spacing);
}

double ScalarField::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double ScalarField::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

void ScalarField::validate() const {
  if (width < 3 || height < 3)
    throw std::invalid_argument("ScalarField needs width, height >= 3");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("ScalarField holds non-finite values");
}

ScalarField ScalarField::sample(
    int w, int h, double spacing,
    const std::function<double(double, double)>& fn) {
  ScalarField f(w, h, spacing);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f.at(x, y) = fn(x * spacing, y * spacing);
  return f;
}

PolyField PolyField::rotated(double angle) const {
  // p'(x) = p(R x) with R = [[c,-s],[s,c]]: g' = R^T g, H' = R^T H R.
  const double c = std::cos(angle), s = std::sin(angle);
  PolyField q;
  q.c00 = c00;
  q.c10 = c * c10 + s * c01;
  q.c01 = -s * c10 + c * c01;
  const Mat2 H = hessian();
  const double hxx = c * (H.xx * c + H.xy * s) + s * (H.xy * c + H.yy * s);
  const double hxy = c * (H.xy * c + H.yy * s) - s * (H.xx * c + H.xy * s);
  const double hyy = -s * (H.xy * c - H.xx * s) + c * (H.yy * c - H.xy * s);
  q.c20 = 0.5 * hxx;
  q.c11 = hxy;
  q.c02 = 0.5 * hyy;
  return q;
}

LocalFrame frame_from_derivatives(Vec2 grad_f, Mat2 hess_f, Vec2 grad_u,
                                  Mat2 hess_u) {
  LocalFrame fr;
  fr.grad_f_mag = norm(grad_f);
  fr.grad_u_mag = norm(grad_u);
  fr.singular_f = fr.grad_f_mag < kEpsSingular;
  fr.singular_u = fr.grad_u_mag < kEpsSingular;
  if (!fr.singular_f) {
    const Vec2 chi = (1.0 / fr.grad_f_mag) * grad_f;
    const Vec2 zeta{-chi.y, chi.x};  // chi rotated +90deg (level-line dir)
    fr.f_zz = hess_f.quad(zeta);
    fr.f_zx = hess_f.bilinear(zeta, chi);
    fr.f_xx = hess_f.quad(chi);
  }
  if (!fr.singular_u) {
    const Vec2 eta = (1.0 / fr.grad_u_mag) * grad_u;
    const Vec2 xi{-eta.y, eta.x};
    fr.u_xixi = hess_u.quad(xi);
  }
  if (!fr.singular_f && !fr.singular_u)
    fr.alpha = std::atan2(cross(grad_f, grad_u), dot(grad_f, grad_u));
  return fr;
}

LocalFrame local_frame(const ScalarField& f, const ScalarField& u, int x,
                       int y) {
  return frame_from_derivatives(f.gradient(x, y), f.hessian(x, y),
                                u.gradient(x, y), u.hessian(x, y));
}

LocalFrame local_frame(const PolyField& f, const PolyField& u, Vec2 p) {
  return frame_from_derivatives(f.gradient(p), f.hessian(), u.gradient(p),
                                u.hessian());
}

}  // namespace amoeba
