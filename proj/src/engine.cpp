#include "amoeba/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <thread>

#include "amoeba/numerics.hpp"

namespace amoeba {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void parallel_rows(int height, int threads, const auto& body) {
  if (threads <= 1) {
    for (int y = 0; y < height; ++y) body(y);
    return;
  }
  std::vector<std::thread> pool;
  const int n = std::min(threads, height);
  pool.reserve(n);
  for (int t = 0; t < n; ++t)
    pool.emplace_back([&, t] {
      for (int y = t; y < height; y += n) body(y);
    });
  for (auto& th : pool) th.join();
}

struct StepOffsets {
  int dx[8], dy[8];
  double len[8];
  int count;
};

StepOffsets offsets_for(double h, int connectivity) {
  StepOffsets o{};
  const int ax[4] = {1, -1, 0, 0}, ay[4] = {0, 0, 1, -1};
  for (int i = 0; i < 4; ++i) {
    o.dx[i] = ax[i];
    o.dy[i] = ay[i];
    o.len[i] = h;
  }
  o.count = 4;
  if (connectivity == 8) {
    const int qx[4] = {1, 1, -1, -1}, qy[4] = {1, -1, 1, -1};
    for (int i = 0; i < 4; ++i) {
      o.dx[4 + i] = qx[i];
      o.dy[4 + i] = qy[i];
      o.len[4 + i] = std::numbers::sqrt2 * h;
    }
    o.count = 8;
  } else if (connectivity != 4) {
    throw std::invalid_argument("connectivity must be 4 or 8");
  }
  return o;
}

}  // namespace

Amoeba compute_amoeba(const ScalarField& f, const AmoebaMetric& metric,
                      double rho, int cx, int cy, int connectivity) {
  if (!(rho > 0.0)) throw std::invalid_argument("amoeba radius must be > 0");
  if (cx < 0 || cy < 0 || cx >= f.width || cy >= f.height)
    throw std::invalid_argument("amoeba center outside the image");

  // Any path of n grid steps costs at least n*h*nu(0), so the amoeba fits in
  // a Chebyshev box of that many steps around the center.
  const double h = f.spacing;
  const int reach = static_cast<int>(std::ceil(rho / (h * metric.nu(0.0))));
  const int x0 = std::max(0, cx - reach), x1 = std::min(f.width - 1, cx + reach);
  const int y0 = std::max(0, cy - reach), y1 = std::min(f.height - 1, cy + reach);
  const int bw = x1 - x0 + 1, bh = y1 - y0 + 1;

  std::vector<double> dist(static_cast<std::size_t>(bw) * bh, kInf);
  std::vector<uint8_t> done(dist.size(), 0);
  auto bidx = [&](int x, int y) {
    return static_cast<std::size_t>(y - y0) * bw + (x - x0);
  };

  const StepOffsets off = offsets_for(h, connectivity);
  using Node = std::pair<double, int>;  // (distance, box index)
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  dist[bidx(cx, cy)] = 0.0;
  heap.emplace(0.0, static_cast<int>(bidx(cx, cy)));

  Amoeba result;
  result.center = static_cast<int>(f.idx(cx, cy));
  result.rho = rho;

  while (!heap.empty()) {
    const auto [d, bi] = heap.top();
    heap.pop();
    if (d > rho) break;  // everything beyond the radius is irrelevant
    if (done[bi]) continue;
    done[bi] = 1;
    const int x = x0 + bi % bw, y = y0 + bi / bw;
    result.members.push_back({static_cast<int>(f.idx(x, y)), d});
    const double fv = f.at(x, y);
    for (int k = 0; k < off.count; ++k) {
      const int nx = x + off.dx[k], ny = y + off.dy[k];
      if (nx < x0 || nx > x1 || ny < y0 || ny > y1) continue;
      const std::size_t nb = bidx(nx, ny);
      if (done[nb]) continue;
      const double nd =
          d + edge_weight(metric, off.len[k], f.at(nx, ny) - fv);
      if (nd < dist[nb] && nd <= rho) {
        dist[nb] = nd;
        heap.emplace(nd, static_cast<int>(nb));
      }
    }
  }
  return result;
}

int selection_index(std::size_t count, const BiasSpec& bias) {
  if (count == 0) throw std::invalid_argument("rank_select: empty multiset");
  const long long p = static_cast<long long>(count) - 1;
  long long i = p / 2;
  switch (bias.kind) {
    case BiasKind::None: break;
    case BiasKind::FixedOffset: i += round_half_away(bias.value); break;
    case BiasKind::Quantile:
      // the q = 1/2 tie must reproduce the lower median exactly
      i = static_cast<long long>(std::ceil(bias.value * p - 0.5));
      break;
    case BiasKind::Quadratic:
      i += round_half_away(bias.value * static_cast<double>(p) * p);
      break;
  }
  return static_cast<int>(std::clamp(i, 0LL, p));
}

double rank_select(std::vector<double> values, const BiasSpec& bias) {
  const int i = selection_index(values.size(), bias);
  std::nth_element(values.begin(), values.begin() + i, values.end());
  return values[i];
}

BiasSpec resolve_gamma(const BiasSpec& bias, double rho, int p, double area) {
  if (!bias.gamma_mode) return bias;
  const double gamma = bias.value;
  BiasSpec out;
  out.kind = bias.kind;
  switch (bias.kind) {
    case BiasKind::None: break;
    case BiasKind::FixedOffset: {
      const double density = p > 0 ? p / area : 0.0;
      out.value = gamma * rho * rho * rho * density / 3.0;
      break;
    }
    case BiasKind::Quantile:
      out.value = 0.5 + gamma * rho / (3.0 * std::numbers::pi);
      out.value = std::clamp(out.value, 0.0, 1.0);
      break;
    case BiasKind::Quadratic:
      out.value = p > 0 ? gamma * area /
                              (3.0 * std::numbers::pi * std::numbers::pi *
                               rho * p)
                        : 0.0;
      break;
  }
  return out;
}

namespace {

ScalarField filter_with(const ScalarField& f, const ScalarField& u,
                        const AmoebaMetric& metric, double rho,
                        const BiasSpec& bias, int threads, int connectivity,
                        const std::vector<std::vector<int>>* precomputed) {
  if (f.width != u.width || f.height != u.height)
    throw std::invalid_argument("aac_step: f and u dimensions differ");
  bias.validate();
  ScalarField out(u.width, u.height, u.spacing);
  const double pixel_area = f.spacing * f.spacing;
  parallel_rows(
      f.height, threads,
      [&](int y) {
        std::vector<double> vals;
        for (int x = 0; x < f.width; ++x) {
          vals.clear();
          if (precomputed) {
            for (int gi : (*precomputed)[f.idx(x, y)])
              vals.push_back(u.values[gi]);
          } else {
            const Amoeba am =
                compute_amoeba(f, metric, rho, x, y, connectivity);
            for (const auto& m : am.members) vals.push_back(u.values[m.index]);
          }
          const BiasSpec b = resolve_gamma(
              bias, rho, static_cast<int>(vals.size()) - 1,
              static_cast<double>(vals.size()) * pixel_area);
          out.at(x, y) = rank_select(vals, b);
        }
      });
  return out;
}

}  // namespace

ScalarField aac_step(const ScalarField& f, const ScalarField& u,
                     const AmoebaMetric& metric, double rho,
                     const BiasSpec& bias, int threads, int connectivity) {
  return filter_with(f, u, metric, rho, bias, threads, connectivity, nullptr);
}

ScalarField amf_step(const ScalarField& f, const AmoebaMetric& metric,
                     double rho, int threads, int connectivity) {
  return filter_with(f, f, metric, rho, BiasSpec::none(), threads,
                     connectivity, nullptr);
}

std::vector<Snapshot> run_iterations(const ScalarField& f,
                                     const ScalarField* u0,
                                     const DriverConfig& config) {
  if (config.iterations < 1)
    throw std::invalid_argument("run_iterations: iterations >= 1");
  std::vector<Snapshot> snaps;

  if (config.mode == DriverMode::AMF) {
    ScalarField cur = f;
    for (int it = 1; it <= config.iterations; ++it) {
      cur = amf_step(cur, config.metric, config.rho, config.threads,
                     config.connectivity);
      if ((config.snapshot_every > 0 && it % config.snapshot_every == 0) ||
          it == config.iterations)
        snaps.push_back({it, cur});
    }
    return snaps;
  }

  if (!u0) throw std::invalid_argument("AAC mode requires an initial u");
  // Amoebas depend only on the fixed pilot image: compute them once.
  std::vector<std::vector<int>> members(f.values.size());
  parallel_rows(f.height, config.threads, [&](int y) {
    for (int x = 0; x < f.width; ++x) {
      const Amoeba am = compute_amoeba(f, config.metric, config.rho, x, y,
                                       config.connectivity);
      auto& list = members[f.idx(x, y)];
      list.reserve(am.members.size());
      for (const auto& m : am.members) list.push_back(m.index);
    }
  });
  ScalarField cur = *u0;
  for (int it = 1; it <= config.iterations; ++it) {
    cur = filter_with(f, cur, config.metric, config.rho, config.bias,
                      config.threads, config.connectivity, &members);
    if ((config.snapshot_every > 0 && it % config.snapshot_every == 0) ||
        it == config.iterations)
      snaps.push_back({it, cur});
  }
  return snaps;
}

}  // namespace amoeba
