#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "pvlab/errors.hpp"
#include "pvlab/quadrature.hpp"
#include "pvlab/special.hpp"

using namespace pvlab;

TEST_SUITE("special") {

// Reference values computed to 20 digits with an arbitrary-precision library.
TEST_CASE("Si and Ci at frozen points") {
  struct Row {
    double x, si, ci;
  };
  const Row rows[] = {
      {0.5, 0.49310741804306668916, -0.17778407880661290134},
      {2.0, 1.6054129768026948486, 0.4229808287748649957},
      {3.9, 1.7765013604478054544, -0.12349934920781512614},
      {4.0, 1.7582031389490530581, -0.14098169788693041164},
      {4.5, 1.6541404143792439835, -0.19349112210173875742},
      {10.0, 1.6583475942188740493, -0.045456433004455372635},
      {30.0, 1.566756540030351111, -0.033032417282071143779},
      {100.0, 1.5622254668890562934, -0.0051488251426104921444},
      {1234.5, 1.5715976670275842074, 0.0001184259969612649597},
      {1e5, 1.5708063203993941228, 3.575879157293513569e-7},
  };
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(std::abs(sine_integral(r.x) - r.si) <= 1e-13);
    CHECK(std::abs(cosine_integral(r.x) - r.ci) <= 1e-13);
  }
}

TEST_CASE("Si is odd, bounded, and tends to pi/2") {
  CHECK(sine_integral(0.0) == 0.0);
  for (double x = 0.01; x < 200.0; x *= 1.37) {
    REQUIRE(sine_integral(-x) == -sine_integral(x));
    REQUIRE(std::abs(sine_integral(x)) <= 1.8519370519824663 + 1e-15);
  }
  CHECK(std::abs(sine_integral(1e12) - std::numbers::pi / 2) < 1e-11);
  CHECK(sine_integral(std::numeric_limits<double>::infinity()) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("Si agrees with direct quadrature across the series/fraction switch") {
  for (double x : {0.1, 1.0, 3.0, 3.999, 4.001, 5.0, 7.5, 12.0}) {
    CAPTURE(x);
    CHECK(std::abs(sine_integral(x) - oracle::si_quadrature(x)) < 1e-12);
  }
}

TEST_CASE("Ci domain") {
  CHECK_THROWS_AS(cosine_integral(0.0), DomainError);
  CHECK_THROWS_AS(cosine_integral(-1.0), DomainError);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {1, 2, 8, 16, 96}) {
    const GaussRule g = gauss_legendre(n);
    REQUIRE(g.nodes.size() == static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) REQUIRE(g.nodes[i] > g.nodes[i - 1]);
    for (int deg = 0; deg < 2 * n; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      REQUIRE(std::abs(s - exact) < 1e-13);
    }
  }
}

}  // TEST_SUITE
