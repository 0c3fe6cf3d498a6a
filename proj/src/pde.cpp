#include "amoeba/pde.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace amoeba {

namespace {

constexpr double kCurvatureEps = 1e-10;  // |grad u|^2 regularisation

double shrink(double x, double threshold) {
  const double m = std::abs(x) - threshold;
  return m > 0.0 ? (x > 0.0 ? m : -m) : 0.0;
}

void warn_time_step(const PdeParams& p, double h) {
  // stability guard tau <= h^2/4 (max g = 1); warn, do not fail
  static thread_local bool warned = false;
  if (!warned && p.tau > 0.25 * h * h * (1.0 + 1e-12)) {
    std::fprintf(stderr,
                 "warning: time step tau=%g exceeds the stability bound "
                 "h^2/4=%g\n",
                 p.tau, 0.25 * h * h);
    warned = true;
  }
}

ScalarField evolve(const ScalarField& u, const ScalarField& g,
                   const PdeParams& p, bool with_force) {
  const int W = u.width, H = u.height;
  const double h = u.spacing;
  warn_time_step(p, h);
  ScalarField out(W, H, u.spacing);
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const double ux = u.dx(x, y), uy = u.dy(x, y);
      const double uxx = u.dxx(x, y), uyy = u.dyy(x, y), uxy = u.dxy(x, y);
      const double g2 = ux * ux + uy * uy;
      const double gv = g.at(x, y);

      // g |grad u| div(grad u / |grad u|)
      const double curv =
          gv * (uxx * uy * uy - 2.0 * uxy * ux * uy + uyy * ux * ux) /
          (g2 + kCurvatureEps);

      // <grad g, grad u> upwinded on u by the sign of grad g
      const double gx = g.dx(x, y), gy = g.dy(x, y);
      const double uc = u.at(x, y);
      const double dxp = (u.clamped(x + 1, y) - uc) / h;
      const double dxm = (uc - u.clamped(x - 1, y)) / h;
      const double dyp = (u.clamped(x, y + 1) - uc) / h;
      const double dym = (uc - u.clamped(x, y - 1)) / h;
      const double transport =
          gx * (gx > 0.0 ? dxp : dxm) + gy * (gy > 0.0 ? dyp : dym);

      double rhs = curv + transport;

      if (with_force) {
        double F = 0.0;
        switch (p.force_mode) {
          case ForceMode::None: break;
          case ForceMode::Constant: F = p.k; break;
          case ForceMode::Modulated: F = gv * p.k; break;
          case ForceMode::Shrinkage: F = shrink(gv * p.k, p.k_bar); break;
        }
        if (F != 0.0) {
          double grad;
          if (F > 0.0)
            grad = std::sqrt(std::max(dxp, 0.0) * std::max(dxp, 0.0) +
                             std::min(dxm, 0.0) * std::min(dxm, 0.0) +
                             std::max(dyp, 0.0) * std::max(dyp, 0.0) +
                             std::min(dym, 0.0) * std::min(dym, 0.0));
          else
            grad = std::sqrt(std::max(dxm, 0.0) * std::max(dxm, 0.0) +
                             std::min(dxp, 0.0) * std::min(dxp, 0.0) +
                             std::max(dym, 0.0) * std::max(dym, 0.0) +
                             std::min(dyp, 0.0) * std::min(dyp, 0.0));
          rhs += F * grad;
        }
      }
      out.at(x, y) = uc + p.tau * rhs;
    }
  }
  return out;
}

}  // namespace

double edge_stop_g(double s2, double lambda) {
  if (s2 < 0.0) throw std::invalid_argument("edge_stop_g: s2 must be >= 0");
  return 1.0 / (1.0 + s2 / (lambda * lambda));
}

ScalarField gaussian_smooth(const ScalarField& f, double sigma) {
  if (sigma <= 0.0) return f;
  const int r = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> w(r + 1);
  double total = 0.0;
  for (int i = 0; i <= r; ++i) {
    w[i] = std::exp(-0.5 * i * i / (sigma * sigma));
    total += (i == 0) ? w[i] : 2.0 * w[i];
  }
  for (auto& v : w) v /= total;

  ScalarField tmp(f.width, f.height, f.spacing), out = tmp;
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x) {
      double s = w[0] * f.at(x, y);
      for (int i = 1; i <= r; ++i)
        s += w[i] * (f.clamped(x - i, y) + f.clamped(x + i, y));
      tmp.at(x, y) = s;
    }
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x) {
      double s = w[0] * tmp.at(x, y);
      for (int i = 1; i <= r; ++i)
        s += w[i] * (tmp.clamped(x, y - i) + tmp.clamped(x, y + i));
      out.at(x, y) = s;
    }
  return out;
}

ScalarField edge_stop_field(const ScalarField& f, double lambda,
                            double sigma) {
  const ScalarField fs = gaussian_smooth(f, sigma);
  ScalarField g(f.width, f.height, f.spacing);
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x) {
      const double gx = fs.dx(x, y), gy = fs.dy(x, y);
      g.at(x, y) = edge_stop_g(gx * gx + gy * gy, lambda);
    }
  return g;
}

ScalarField gac_step(const ScalarField& u, const ScalarField& g,
                     const PdeParams& p) {
  if (u.width != g.width || u.height != g.height)
    throw std::invalid_argument("gac_step: u and g dimensions differ");
  return evolve(u, g, p, true);
}

ScalarField self_snakes_step(const ScalarField& u, const PdeParams& p) {
  const ScalarField g = edge_stop_field(u, p.lambda, p.sigma);
  return evolve(u, g, p, false);
}

std::vector<Snapshot> run_pde(const ScalarField* f, const ScalarField& u0,
                              const PdeDriverConfig& config) {
  if (config.iterations < 1)
    throw std::invalid_argument("run_pde: iterations >= 1");
  std::vector<Snapshot> snaps;
  ScalarField cur = u0;
  ScalarField g;
  if (config.mode == PdeMode::GAC) {
    if (!f) throw std::invalid_argument("GAC mode requires an image f");
    g = edge_stop_field(*f, config.params.lambda, config.params.sigma);
  }
  for (int it = 1; it <= config.iterations; ++it) {
    cur = (config.mode == PdeMode::GAC) ? gac_step(cur, g, config.params)
                                        : self_snakes_step(cur, config.params);
    if ((config.snapshot_every > 0 && it % config.snapshot_every == 0) ||
        it == config.iterations)
      snaps.push_back({it, cur});
  }
  return snaps;
}

}  // namespace amoeba
