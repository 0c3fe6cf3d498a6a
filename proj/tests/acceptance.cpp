// Acceptance suite: one test case per published criterion, each printing a
// single PASS/FAIL line. Tolerances are pinned in code.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "amoeba/coefficients.hpp"
#include "amoeba/contour.hpp"
#include "amoeba/engine.hpp"
#include "amoeba/oracle.hpp"
#include "amoeba/pde.hpp"
#include "amoeba/rhs.hpp"

using namespace amoeba;

namespace {

constexpr double kPi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(int criterion, bool pass, const char* fmt, ...) {
  std::printf("criterion %2d: %s - ", criterion, pass ? "PASS" : "FAIL");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
  std::fflush(stdout);
}

ScalarField disc_image(int n = 128, double r = 30.0) {
  ScalarField f(n, n, 1.0, 40.0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double dx = x - (n - 1) / 2.0, dy = y - (n - 1) / 2.0;
      if (dx * dx + dy * dy < r * r) f.at(x, y) = 200.0;
    }
  return f;
}

AmoebaMetric quartic_metric() {
  return AmoebaMetric::custom(
      [](double s) { return std::pow(1.0 + s * s * s * s, 0.25); },
      [](double s) {
        return s * s * s * std::pow(1.0 + s * s * s * s, -0.75);
      });
}

}  // namespace

TEST_CASE("criterion 1: closed-form coefficients match quadrature") {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& metric : {AmoebaMetric::l1(), AmoebaMetric::l2()})
    for (int k = 1; k <= 3; ++k)
      for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
          const double s = 3.0 * i / 19.0;
          const double a = -kPi / 2 + kPi * j / 19.0;
          const double closed = metric.kind == MetricKind::L1
                                    ? J_closed_l1(k, s, a)
                                    : J_closed_l2(k, s, a);
          worst = std::max(worst,
                           std::abs(closed - J_quadrature(metric, k, s, a)));
        }
  const double dt = seconds_since(t0);
  const bool pass = worst <= 1e-8 && dt < 5.0;
  report(1, pass, "max |closed - quadrature| = %.3e (gate 1e-8), %.2fs "
                  "(gate 5s)", worst, dt);
  CHECK(worst <= 1e-8);
  CHECK(dt < 5.0);
}

TEST_CASE("criterion 2: L2 self-snakes g is the Perona-Malik function") {
  double worst = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double s = 3.0 * i / 300.0;
    worst = std::max(worst, std::abs(selfsnakes_g(AmoebaMetric::l2(), 1.0, s) -
                                     1.0 / (1.0 + s * s)));
  }
  report(2, worst <= 1e-10, "max deviation %.3e (gate 1e-10)", worst);
  CHECK(worst <= 1e-10);
}

TEST_CASE("criterion 3: h(s) = s g'(s)") {
  double worst = 0.0;
  for (const auto& m :
       {AmoebaMetric::l1(), AmoebaMetric::l2(), quartic_metric()})
    for (int i = 0; i <= 29; ++i) {
      const double s = 0.1 + 2.9 * i / 29.0;
      const double gp =
          (selfsnakes_g(m, 1.0, s + 1e-5) - selfsnakes_g(m, 1.0, s - 1e-5)) /
          2e-5;
      worst = std::max(worst, std::abs(selfsnakes_h(m, 1.0, s) - s * gp));
    }
  report(3, worst <= 1e-6, "max |h - s g'| = %.3e (gate 1e-6)", worst);
  CHECK(worst <= 1e-6);
}

TEST_CASE("criterion 4: the independent quantile-integral route agrees") {
  double worst_l2 = 0.0, worst_l1 = 0.0;
  for (int i = 0; i <= 29; ++i) {
    const double s = 0.1 + 2.9 * i / 29.0;
    worst_l2 = std::max(worst_l2,
                        std::abs(g_jmiv11(AmoebaMetric::l2(), 1.0, s) -
                                 selfsnakes_g(AmoebaMetric::l2(), 1.0, s)));
    worst_l1 = std::max(worst_l1,
                        std::abs(g_jmiv11(AmoebaMetric::l1(), 1.0, s) -
                                 selfsnakes_g(AmoebaMetric::l1(), 1.0, s)));
  }
  const bool pass = worst_l2 <= 1e-6 && worst_l1 <= 1e-5;
  report(4, pass, "L2 %.3e (gate 1e-6), L1 %.3e (gate 1e-5)", worst_l2,
         worst_l1);
  CHECK(worst_l2 <= 1e-6);
  CHECK(worst_l1 <= 1e-5);
}

TEST_CASE("criterion 5: measured median shifts converge to the PDE") {
  const auto t0 = std::chrono::steady_clock::now();
  struct Fixture {
    const char* name;
    PolyField f, u;
  };
  // quadratic pairs with |grad f| = O(1) and alpha = 0, pi/2, pi/3
  const std::vector<Fixture> fixtures{
      {"aligned",
       {.c10 = 1.0, .c20 = 0.15, .c11 = 0.1, .c02 = -0.2},
       {.c10 = 1.0, .c20 = -0.1, .c11 = 0.25, .c02 = 0.3}},
      {"orthogonal",
       {.c10 = 1.0, .c20 = 0.15, .c11 = 0.1, .c02 = -0.2},
       {.c01 = 1.0, .c20 = 0.3, .c11 = 0.15, .c02 = -0.1}},
      {"generic",
       {.c10 = 0.8, .c20 = 0.45, .c11 = 0.25, .c02 = 0.35},
       {.c10 = 0.45, .c01 = 0.779422863405995, .c20 = -0.3, .c11 = 0.35,
        .c02 = 0.3}}};
  bool all = true;
  for (const auto& metric : {AmoebaMetric::l1(), AmoebaMetric::l2()})
    for (const auto& fx : fixtures) {
      const auto rep = verify_theorem(fx.f, fx.u, metric, {0, 0},
                                      {0.2, 0.1, 0.05, 0.025});
      all = all && rep.passed;
      std::printf("  theorem %-10s %s: rel %.4f, errors", fx.name,
                  metric.kind == MetricKind::L1 ? "L1" : "L2",
                  rep.final_rel_error);
      for (double e : rep.error) std::printf(" %.2e", e);
      std::printf("\n");
    }
  const double dt = seconds_since(t0);
  const bool pass = all && dt < 120.0;
  report(5, pass, "6 fixtures, rel error gate 0.05 at rho 0.025, "
                  "monotone decrease; %.1fs (gate 120s)", dt);
  CHECK(all);
  CHECK(dt < 120.0);
}

TEST_CASE("criterion 6: corollary consistency of the right-hand sides") {
  double worst_gac = 0.0, worst_ssn = 0.0;
  for (const auto& metric : {AmoebaMetric::l1(), AmoebaMetric::l2()}) {
    for (double s : {0.3, 0.947, 1.0, 1.8, 2.6})
      for (double r : {0.4, 1.0, 3.0})
        for (double fxx : {-0.7, 0.0, 1.2}) {
          LocalFrame fr;
          fr.grad_f_mag = s;
          fr.grad_u_mag = 1.3;
          fr.alpha = 0.0;
          fr.f_zz = s / r;
          fr.f_zx = 0.0;
          fr.f_xx = fxx;
          fr.u_xixi = fr.grad_u_mag / r;
          worst_gac = std::max(worst_gac, std::abs(aac_rhs(metric, fr) -
                                                   gac_rhs_rotsym(metric, fr)));
        }
    for (double beta : {0.5, 1.0, 2.0})
      for (double gu : {0.2, 1.0, 2.4})
        for (double uee : {-0.8, 0.5}) {
          const double uxx = 0.37;
          LocalFrame fr;
          fr.grad_f_mag = beta * gu;
          fr.grad_u_mag = gu;
          fr.alpha = 0.0;
          fr.f_zz = beta * uxx;
          fr.f_zx = beta * 0.21;  // killed by J2(s, 0) = 0
          fr.f_xx = beta * uee;
          fr.u_xixi = uxx;
          worst_ssn = std::max(
              worst_ssn,
              std::abs(aac_rhs(metric, fr) - ssn_rhs(metric, beta, gu, uxx, uee)));
        }
  }
  const bool pass = worst_gac <= 1e-10 && worst_ssn <= 1e-10;
  report(6, pass, "GAC reduction %.3e, self-snakes reduction %.3e "
                  "(gates 1e-10)", worst_gac, worst_ssn);
  CHECK(worst_gac <= 1e-10);
  CHECK(worst_ssn <= 1e-10);
}

TEST_CASE("criterion 7: biased oracle reproduces the balloon-force limit") {
  const PolyField f{.c00 = 1.0};
  const PolyField u{.c10 = 0.6, .c01 = -0.45};  // |grad u| = 0.75
  const double grad_u = 0.75, gamma = 0.8, rho = 0.05;
  const double area = kPi * rho * rho;
  const struct {
    const char* name;
    double dA;
  } cases[] = {
      {"fixed_offset", gamma * rho * rho * rho / 3.0},
      {"quantile", (gamma * rho / (3.0 * kPi)) * area},
      {"quadratic", gamma * area * area / (3.0 * kPi * kPi * rho)},
  };
  bool all = true;
  const OracleConfig fine{.rays = 2880};
  for (const auto& c : cases) {
    const auto r = continuous_median_oracle(f, u, AmoebaMetric::l2(), rho,
                                            {0, 0}, c.dA, fine);
    const double lhs = 6.0 * (r.mu - u.value({0, 0})) / (rho * rho);
    const double rel = std::abs(lhs - gamma * grad_u) / (gamma * grad_u);
    std::printf("  force %-12s: %.5f vs %.5f (rel %.4f)\n", c.name, lhs,
                gamma * grad_u, rel);
    all = all && rel <= 0.05;
  }
  report(7, all, "three bias laws vs gamma |grad u|, rel gate 0.05 at "
                 "rho = 0.05");
  CHECK(all);
}

TEST_CASE("criterion 8: qualitative separations from geodesic contours") {
  // homogeneous gradients: curvature coefficient strictly above GAC's
  bool strict = true;
  for (int i = 1; i <= 11; ++i)
    for (int j = 1; j <= 11; ++j) {
      const double s = 0.25 + 2.75 * (i - 1) / 10.0;
      const double a = (kPi / 2) * j / 12.0;  // inside (0, pi/2)
      LocalFrame fr;
      fr.grad_f_mag = s;
      fr.grad_u_mag = 1.0;
      fr.alpha = a;
      fr.u_xixi = 1.0;
      const double aac_coef = aac_rhs_l2(fr);
      strict = strict && aac_coef > 1.0 / (1.0 + s * s);
    }
  // orthogonal gradients: coupling exceeds GAC's by exactly (1 + s^2)
  double worst = 0.0;
  for (double s : {0.4, 1.0, 1.7, 2.5, 3.0}) {
    LocalFrame fr;
    fr.grad_f_mag = s;
    fr.grad_u_mag = 1.9;
    fr.alpha = kPi / 2;
    fr.f_zx = 1.0;
    const double aac_coef = aac_rhs_l2(fr);
    const double gac_coef =
        -2.0 * s / ((1.0 + s * s) * (1.0 + s * s)) * fr.grad_u_mag;
    worst = std::max(worst, std::abs(aac_coef - (1.0 + s * s) * gac_coef));
  }
  const bool pass = strict && worst <= 1e-12;
  report(8, pass, "strict slowdown inequality %s; coupling factor deviation "
                  "%.3e (gate 1e-12)", strict ? "holds" : "violated", worst);
  CHECK(strict);
  CHECK(worst <= 1e-12);
}

TEST_CASE("criterion 9: disc segmentation smoke tests") {
  const int n = 128;
  const double R = 30.0, cx = 63.5, cy = 63.5;
  const ScalarField f = disc_image(n, R);

  // (a) AAC, initialisation outside, no bias
  auto t0 = std::chrono::steady_clock::now();
  double hd_out;
  {
    ScalarField u0 = signed_distance(circle_mask(n, n, cx, cy, 45.0), n, n);
    DriverConfig dc;
    dc.mode = DriverMode::AAC;
    dc.metric = AmoebaMetric::l2(0.1);
    dc.rho = 8.0;
    dc.iterations = 80;  // curvature shrink locks onto the edge by ~50
    dc.threads = 4;
    const auto snaps = run_iterations(f, &u0, dc);
    hd_out = hausdorff_to_circle(zero_crossings(snaps.back().field),
                                 {cx, cy}, R);
  }
  const double t_out = seconds_since(t0);

  // (b) AAC, initialisation inside, dilation bias (fixed offset b > 0)
  t0 = std::chrono::steady_clock::now();
  double hd_in;
  {
    ScalarField u0 = signed_distance(circle_mask(n, n, cx, cy, 12.0), n, n);
    DriverConfig dc;
    dc.mode = DriverMode::AAC;
    dc.metric = AmoebaMetric::l2(0.1);
    dc.rho = 8.0;
    dc.bias = BiasSpec::fixed_offset(20.0);
    dc.iterations = 60;
    dc.threads = 4;
    const auto snaps = run_iterations(f, &u0, dc);
    hd_in = hausdorff_to_circle(zero_crossings(snaps.back().field),
                                {cx, cy}, R);
  }
  const double t_in = seconds_since(t0);

  // (c) GAC with matched parameters
  t0 = std::chrono::steady_clock::now();
  double hd_gac;
  {
    ScalarField u = signed_distance(circle_mask(n, n, cx, cy, 45.0), n, n);
    PdeDriverConfig pc;
    pc.mode = PdeMode::GAC;
    pc.params.lambda = 5.0;
    pc.params.sigma = 1.0;
    pc.params.tau = 0.2;
    pc.iterations = 3000;
    const auto snaps = run_pde(&f, u, pc);
    hd_gac = hausdorff_to_circle(zero_crossings(snaps.back().field),
                                 {cx, cy}, R);
  }
  const double t_gac = seconds_since(t0);

  const bool pass = hd_out <= 2.0 && hd_in <= 2.0 && hd_gac <= 3.0 &&
                    t_out < 60.0 && t_in < 60.0 && t_gac < 60.0;
  report(9, pass, "Hausdorff px: AAC outside %.2f (gate 2), AAC biased "
                  "inside %.2f (gate 2), GAC %.2f (gate 3); times %.1f/%.1f/"
                  "%.1fs (gate 60s each)", hd_out, hd_in, hd_gac, t_out,
         t_in, t_gac);
  CHECK(hd_out <= 2.0);
  CHECK(hd_in <= 2.0);
  CHECK(hd_gac <= 3.0);
  CHECK(t_out < 60.0);
  CHECK(t_in < 60.0);
  CHECK(t_gac < 60.0);
}

TEST_CASE("criterion 10: morphological invariance, bit-exact") {
  std::mt19937 rng(20240229);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 14;
    ScalarField f(n, n, 1.0), u(n, n, 1.0);
    for (auto& v : f.values) v = 10.0 * uni(rng);
    for (auto& v : u.values) v = 10.0 * uni(rng);

    BiasSpec bias;
    switch (trial % 4) {
      case 0: bias = BiasSpec::none(); break;
      case 1: bias = BiasSpec::fixed_offset(std::floor(5.0 * uni(rng)) - 2.0); break;
      case 2: bias = BiasSpec::quantile(0.2 + 0.6 * uni(rng)); break;
      case 3: bias = BiasSpec::quadratic(0.1 * (uni(rng) - 0.5)); break;
    }
    // strictly increasing piecewise-linear map on [0, 10]
    const int segs = 4;
    double knots_x[segs + 1], knots_y[segs + 1];
    knots_x[0] = 0.0;
    knots_y[0] = -3.0 + 2.0 * uni(rng);
    for (int i = 1; i <= segs; ++i) {
      knots_x[i] = 10.0 * i / segs;
      knots_y[i] = knots_y[i - 1] + (0.2 + 3.0 * uni(rng)) * (knots_x[i] - knots_x[i - 1]) / 10.0 * 4.0;
    }
    auto m = [&](double t) {
      int i = std::min(static_cast<int>(t / 10.0 * segs), segs - 1);
      if (i < 0) i = 0;
      return knots_y[i] + (t - knots_x[i]) * (knots_y[i + 1] - knots_y[i]) /
                              (knots_x[i + 1] - knots_x[i]);
    };

    const AmoebaMetric metric =
        trial % 2 ? AmoebaMetric::l1(0.3) : AmoebaMetric::l2(0.5);
    ScalarField mu = u;
    for (auto& v : mu.values) v = m(v);
    const ScalarField lhs = aac_step(f, mu, metric, 2.0, bias);
    ScalarField rhs = aac_step(f, u, metric, 2.0, bias);
    for (auto& v : rhs.values) v = m(v);
    if (lhs.values != rhs.values) ++failures;
  }
  report(10, failures == 0, "%d/100 randomized cases bit-exact",
         100 - failures);
  CHECK(failures == 0);
}
