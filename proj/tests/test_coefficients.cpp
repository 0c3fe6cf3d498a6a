#include <doctest.h>

#include <cmath>
#include <numbers>

#include "amoeba/coefficients.hpp"

using namespace amoeba;

namespace {

constexpr double kPi = std::numbers::pi;

AmoebaMetric quartic_metric() {
  // nu(s) = (1 + s^4)^{1/4}: even, increasing, nu(0) = 1, nu'(0) = 0
  return AmoebaMetric::custom(
      [](double s) { return std::pow(1.0 + s * s * s * s, 0.25); },
      [](double s) {
        return s * s * s * std::pow(1.0 + s * s * s * s, -0.75);
      });
}

}  // namespace

TEST_CASE("quadrature pins the simple angular integrals") {
  // L2, alpha = 0: odd integrand makes J2 vanish
  CHECK(J_quadrature(AmoebaMetric::l2(), 2, 1.7, 0.0) ==
        doctest::Approx(0.0).epsilon(1e-10));
  // L1, s = 0: the s->0+ limit of the J1 integrand is sgn(cos t) sin^2 t
  CHECK(J_quadrature(AmoebaMetric::l1(), 1, 0.0, 0.0) ==
        doctest::Approx(kPi / 2).epsilon(1e-10));
  // L2, s = 1, alpha = 0: closed form 1/3
  CHECK(J_quadrature(AmoebaMetric::l2(), 1, 1.0, 0.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("L2 closed forms") {
  for (int k = 1; k <= 3; ++k)
    CHECK(J_closed_l2(k, 0.0, 0.9) == 0.0);
  CHECK(J_closed_l2(1, 1.0, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(J_closed_l2(3, 1.0, kPi / 2) == doctest::Approx(0.0));
}

TEST_CASE("L1 closed forms at pinned points") {
  // J1(1, 0) = 8/15 from the s = 1 branch
  CHECK(J_closed_l1(1, 1.0, 0.0) == doctest::Approx(8.0 / 15.0).epsilon(1e-14));
  // J2(0, pi/2): limit value of the biased integral (= 1, not the paper's
  // misprinted 4/3; the quadrature oracle below settles it)
  CHECK(J_closed_l1(2, 0.0, kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(J_quadrature(AmoebaMetric::l1(), 2, 0.0, kPi / 2) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("closed forms match quadrature on a dense grid") {
  const auto l1 = AmoebaMetric::l1();
  const auto l2 = AmoebaMetric::l2();
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k)
    for (double s : {0.0, 0.5, 0.947, 0.999, 1.0, 1.001, 1.4, 2.0, 3.0})
      for (double a : {0.0, kPi / 6, kPi / 3, -kPi / 4, kPi / 2, -kPi / 2}) {
        worst = std::max(worst, std::abs(J_closed_l1(k, s, a) -
                                         J_quadrature(l1, k, s, a)));
        worst = std::max(worst, std::abs(J_closed_l2(k, s, a) -
                                         J_quadrature(l2, k, s, a)));
      }
  CHECK(worst <= 1e-8);
}

TEST_CASE("J symmetries in alpha") {
  for (double s : {0.3, 1.0, 2.2})
    for (double a : {0.2, 0.9, 1.4}) {
      CHECK(J_closed_l2(1, s, -a) == doctest::Approx(J_closed_l2(1, s, a)).epsilon(1e-14));
      CHECK(J_closed_l2(3, s, -a) == doctest::Approx(J_closed_l2(3, s, a)).epsilon(1e-14));
      CHECK(J_closed_l2(2, s, -a) == doctest::Approx(-J_closed_l2(2, s, a)).epsilon(1e-14));
      CHECK(J_closed_l1(1, s, -a) == doctest::Approx(J_closed_l1(1, s, a)).epsilon(1e-14));
      CHECK(J_closed_l1(3, s, -a) == doctest::Approx(J_closed_l1(3, s, a)).epsilon(1e-14));
      CHECK(J_closed_l1(2, s, -a) == doctest::Approx(-J_closed_l1(2, s, a)).epsilon(1e-14));
      // quadrature route keeps the same symmetry
      const auto q = quartic_metric();
      CHECK(J_quadrature(q, 2, s, -a) ==
            doctest::Approx(-J_quadrature(q, 2, s, a)).epsilon(1e-10));
    }
}

TEST_CASE("structuring element area integral K") {
  CHECK(K_integral(AmoebaMetric::l2(), 0.0) == doctest::Approx(2.0 * kPi));
  CHECK(K_integral(AmoebaMetric::l1(), 0.0) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-10));
  CHECK(K_integral(AmoebaMetric::l2(), 1.0) ==
        doctest::Approx(2.0 * kPi / std::sqrt(2.0)).epsilon(1e-12));
  // frozen regression constant: int dt/(1+|cos t|)^2 over [-pi, pi] = 8/3
  CHECK(K_integral(AmoebaMetric::l1(), 1.0) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("self-snakes g is Perona-Malik for L2") {
  const auto l2 = AmoebaMetric::l2();
  for (double s = 0.0; s <= 3.0; s += 0.1)
    CHECK(selfsnakes_g(l2, 1.0, s) ==
          doctest::Approx(1.0 / (1.0 + s * s)).epsilon(1e-12));
  // with contrast scale beta: lambda = 1/beta
  CHECK(selfsnakes_g(l2, 2.0, 1.5) ==
        doctest::Approx(1.0 / (1.0 + 4.0 * 2.25)).epsilon(1e-12));
}

TEST_CASE("g and h at s = 0") {
  for (const auto& m : {AmoebaMetric::l1(), AmoebaMetric::l2()}) {
    CHECK(selfsnakes_g(m, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(selfsnakes_h(m, 1.0, 0.0) == doctest::Approx(0.0));
  }
}

TEST_CASE("h(s) = s g'(s) for L1, L2 and a custom metric") {
  const double step = 1e-5;
  for (const auto& m :
       {AmoebaMetric::l1(), AmoebaMetric::l2(), quartic_metric()}) {
    for (double s = 0.1; s <= 3.0; s += 0.29) {
      const double gp =
          (selfsnakes_g(m, 1.0, s + step) - selfsnakes_g(m, 1.0, s - step)) /
          (2.0 * step);
      CHECK(std::abs(selfsnakes_h(m, 1.0, s) - s * gp) <= 1e-6);
    }
  }
}

TEST_CASE("the JMIV route reproduces g") {
  const auto l2 = AmoebaMetric::l2();
  const auto l1 = AmoebaMetric::l1();
  for (double s : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(g_jmiv11(l2, 1.0, s) - selfsnakes_g(l2, 1.0, s)) <= 1e-6);
    CHECK(std::abs(g_jmiv11(l1, 1.0, s) - selfsnakes_g(l1, 1.0, s)) <= 1e-6);
  }
  // frozen: g_L1(1) = 1/5
  CHECK(selfsnakes_g(l1, 1.0, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
  // small-s continuity
  CHECK(g_jmiv11(l2, 1.0, 1e-3) == doctest::Approx(1.0).epsilon(1e-2));
}
