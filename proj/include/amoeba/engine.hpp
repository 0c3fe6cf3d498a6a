#pragma once

#include <cstdint>
#include <vector>

#include "amoeba/bias.hpp"
#include "amoeba/field.hpp"
#include "amoeba/metric.hpp"

namespace amoeba {

struct AmoebaMember {
  int index = 0;    // row-major pixel index
  double dist = 0;  // geodesic distance from the center
};

/// One geodesic structuring element: the set of pixels reachable from the
/// center within amoeba distance rho. Clipped at the image boundary.
struct Amoeba {
  int center = 0;
  double rho = 0.0;
  std::vector<AmoebaMember> members;  // includes the center at distance 0
};

/// Dijkstra on the pixel neighbourhood graph with edge costs
/// len * nu(beta df/len); terminates once the frontier exceeds rho.
/// connectivity is 8 (default) or 4.
Amoeba compute_amoeba(const ScalarField& f, const AmoebaMetric& metric,
                      double rho, int cx, int cy, int connectivity = 8);

/// Selection index for a sorted multiset of size count = p+1 under the bias
/// (already resolved, not gamma mode); clamped to [0, p]. Fractional offsets
/// round half away from zero. The unbiased case is the lower median.
int selection_index(std::size_t count, const BiasSpec& bias);

/// Selects the biased rank statistic of the (unsorted) values.
double rank_select(std::vector<double> values, const BiasSpec& bias);

/// Turns a gamma-coupled bias into a concrete one for an amoeba with p+1
/// members of total pixel area `area` and radius rho:
///   fixed offset  b = gamma rho^3 density / 3,  density = p / area
///   quantile      q = 1/2 + gamma rho / (3 pi)
///   quadratic     r = gamma area / (3 pi^2 rho p)
BiasSpec resolve_gamma(const BiasSpec& bias, double rho, int p, double area);

/// One amoeba-active-contour step: median-filters u inside amoebas computed
/// from the pilot image f. f is untouched.
ScalarField aac_step(const ScalarField& f, const ScalarField& u,
                     const AmoebaMetric& metric, double rho,
                     const BiasSpec& bias = {}, int threads = 1,
                     int connectivity = 8);

/// One amoeba median filtering step (aac_step with u = f, no bias).
ScalarField amf_step(const ScalarField& f, const AmoebaMetric& metric,
                     double rho, int threads = 1, int connectivity = 8);

enum class DriverMode { AMF, AAC };

struct DriverConfig {
  DriverMode mode = DriverMode::AMF;
  int iterations = 1;
  AmoebaMetric metric;
  double rho = 1.0;
  BiasSpec bias;
  int snapshot_every = 0;  // 0: only the final iterate
  int connectivity = 8;
  int threads = 1;
};

struct Snapshot {
  int iteration = 0;
  ScalarField field;
};

/// Iterates the filter. AMF recomputes amoebas from the current iterate each
/// step; AAC computes them once from the fixed f and filters u. The final
/// iterate is always included as the last snapshot.
std::vector<Snapshot> run_iterations(const ScalarField& f,
                                     const ScalarField* u0,
                                     const DriverConfig& config);

}  // namespace amoeba
