#pragma once

#include <vector>

#include "amoeba/engine.hpp"
#include "amoeba/field.hpp"

namespace amoeba {

enum class ForceMode { None, Constant, Modulated, Shrinkage };

/// Parameters of the explicit geodesic-active-contour / self-snakes schemes.
struct PdeParams {
  double lambda = 1.0;   // Perona-Malik contrast
  double tau = 0.25;     // explicit time step
  double k = 0.0;        // force coefficient (k > 0 raises u)
  double k_bar = 0.0;    // soft-shrinkage threshold
  double sigma = 0.0;    // Gaussian pre-smoothing of the gradient field
  ForceMode force_mode = ForceMode::None;
};

/// Perona-Malik edge-stopping function g(s^2) = 1 / (1 + s^2/lambda^2).
double edge_stop_g(double s2, double lambda);

/// Discrete convolution with a sampled Gaussian truncated at radius 3*sigma
/// (separable, replicated boundary). sigma = 0 returns the input.
ScalarField gaussian_smooth(const ScalarField& f, double sigma);

/// Edge-stopping field g(|grad f_sigma|^2) from the (pre-smoothed) image.
ScalarField edge_stop_field(const ScalarField& f, double lambda, double sigma);

/// One explicit step of
///   u_t = g |grad u| div(grad u/|grad u|) + <grad g, grad u> + F |grad u|
/// with central differences for the curvature part and first-order upwinding
/// for the transport and force parts. F is 0, k, g k, or the soft shrinkage
/// S_kbar(g k) depending on force_mode. g is the precomputed edge-stopping
/// field (see edge_stop_field).
ScalarField gac_step(const ScalarField& u, const ScalarField& g,
                     const PdeParams& p);

/// One self-snakes step: g is recomputed from the current iterate, no force.
ScalarField self_snakes_step(const ScalarField& u, const PdeParams& p);

enum class PdeMode { GAC, SelfSnakes };

struct PdeDriverConfig {
  PdeMode mode = PdeMode::GAC;
  PdeParams params;
  int iterations = 1;
  int snapshot_every = 0;
};

/// Iterates the scheme; for GAC the edge-stopping field is built once from f.
std::vector<Snapshot> run_pde(const ScalarField* f, const ScalarField& u0,
                              const PdeDriverConfig& config);

}  // namespace amoeba
