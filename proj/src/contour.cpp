#include "amoeba/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace amoeba {

std::vector<std::uint8_t> circle_mask(int w, int h, double cx, double cy,
                                      double r) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double dx = x - cx, dy = y - cy;
      if (dx * dx + dy * dy < r * r) m[static_cast<std::size_t>(y) * w + x] = 1;
    }
  return m;
}

std::vector<std::uint8_t> rect_mask(int w, int h, double x0, double y0,
                                    double x1, double y1) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (x >= x0 && x <= x1 && y >= y0 && y <= y1)
        m[static_cast<std::size_t>(y) * w + x] = 1;
  return m;
}

namespace {

// Two-pass chamfer transform: distance (1, sqrt2 weights) to the seed set.
std::vector<double> chamfer(const std::vector<std::uint8_t>& seed, int w,
                            int h, double spacing) {
  const double inf = std::numeric_limits<double>::infinity();
  const double ax = spacing, di = std::numbers::sqrt2 * spacing;
  std::vector<double> d(seed.size());
  for (std::size_t i = 0; i < seed.size(); ++i) d[i] = seed[i] ? 0.0 : inf;
  auto at = [&](int x, int y) -> double& {
    return d[static_cast<std::size_t>(y) * w + x];
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double v = at(x, y);
      if (x > 0) v = std::min(v, at(x - 1, y) + ax);
      if (y > 0) v = std::min(v, at(x, y - 1) + ax);
      if (x > 0 && y > 0) v = std::min(v, at(x - 1, y - 1) + di);
      if (x + 1 < w && y > 0) v = std::min(v, at(x + 1, y - 1) + di);
      at(x, y) = v;
    }
  for (int y = h - 1; y >= 0; --y)
    for (int x = w - 1; x >= 0; --x) {
      double v = at(x, y);
      if (x + 1 < w) v = std::min(v, at(x + 1, y) + ax);
      if (y + 1 < h) v = std::min(v, at(x, y + 1) + ax);
      if (x + 1 < w && y + 1 < h) v = std::min(v, at(x + 1, y + 1) + di);
      if (x > 0 && y + 1 < h) v = std::min(v, at(x - 1, y + 1) + di);
      at(x, y) = v;
    }
  return d;
}

}  // namespace

ScalarField signed_distance(const std::vector<std::uint8_t>& inside, int w,
                            int h, double spacing) {
  if (inside.size() != static_cast<std::size_t>(w) * h)
    throw std::invalid_argument("signed_distance: mask size mismatch");
  std::vector<std::uint8_t> outside(inside.size());
  for (std::size_t i = 0; i < inside.size(); ++i) outside[i] = !inside[i];
  const auto d_to_out = chamfer(outside, w, h, spacing);
  const auto d_to_in = chamfer(inside, w, h, spacing);
  ScalarField u(w, h, spacing);
  for (std::size_t i = 0; i < inside.size(); ++i)
    u.values[i] = inside[i] ? d_to_out[i] : -d_to_in[i];
  return u;
}

std::vector<Vec2> zero_crossings(const ScalarField& u) {
  std::vector<Vec2> pts;
  for (int y = 0; y < u.height; ++y)
    for (int x = 0; x < u.width; ++x) {
      const double a = u.at(x, y);
      if (x + 1 < u.width) {
        const double b = u.at(x + 1, y);
        if ((a <= 0.0 && b > 0.0) || (a > 0.0 && b <= 0.0))
          pts.push_back({x + a / (a - b), static_cast<double>(y)});
      }
      if (y + 1 < u.height) {
        const double b = u.at(x, y + 1);
        if ((a <= 0.0 && b > 0.0) || (a > 0.0 && b <= 0.0))
          pts.push_back({static_cast<double>(x), y + a / (a - b)});
      }
    }
  return pts;
}

ScalarField overlay_contour(const ScalarField& image, const ScalarField& u) {
  if (image.width != u.width || image.height != u.height)
    throw std::invalid_argument("overlay_contour: dimension mismatch");
  ScalarField out = image;
  for (int y = 0; y < u.height; ++y)
    for (int x = 0; x < u.width; ++x) {
      const double a = u.at(x, y);
      const bool cross =
          (x + 1 < u.width && a * u.at(x + 1, y) <= 0.0 &&
           (a != 0.0 || u.at(x + 1, y) != 0.0)) ||
          (y + 1 < u.height && a * u.at(x, y + 1) <= 0.0 &&
           (a != 0.0 || u.at(x, y + 1) != 0.0)) ||
          (x > 0 && a * u.at(x - 1, y) < 0.0) ||
          (y > 0 && a * u.at(x, y - 1) < 0.0);
      if (cross) out.at(x, y) = 255.0;
    }
  return out;
}

double hausdorff_to_circle(const std::vector<Vec2>& points, Vec2 c, double r) {
  if (points.empty()) return std::numeric_limits<double>::infinity();
  double h1 = 0.0;  // contour -> circle
  for (const Vec2& p : points)
    h1 = std::max(h1, std::abs(norm(p - c) - r));
  double h2 = 0.0;  // circle -> contour
  const int n = 720;
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * std::numbers::pi * i / n;
    const Vec2 q{c.x + r * std::cos(th), c.y + r * std::sin(th)};
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& p : points) {
      const Vec2 d = p - q;
      best = std::min(best, d.x * d.x + d.y * d.y);
    }
    h2 = std::max(h2, std::sqrt(best));
  }
  return std::max(h1, h2);
}

}  // namespace amoeba
