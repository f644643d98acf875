#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pvlab/arcs.hpp"
#include "pvlab/errors.hpp"

using namespace pvlab;

TEST_SUITE("arcs") {

TEST_CASE("arc decomposition sizes") {
  const ArcDecomposition arcs(1000000, 2.0);
  const double l = std::log(1e6);
  CHECK(static_cast<double>(arcs.log_power()) == doctest::Approx(l * l));
  CHECK(arcs.q_max() == static_cast<std::int64_t>(std::floor(l * l)));
  CHECK(static_cast<double>(arcs.halfwidth()) == doctest::Approx(l * l / 1e6));
  const auto c = ArcDecomposition(100, 1.0).centers(1000);  // q <= 4
  CHECK(c.size() == 1 + 1 + 2 + 2);
  CHECK(ArcDecomposition(1000000, 100.0).q_max() == std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(ArcDecomposition(2, 1.0), DomainError);
  CHECK_THROWS_AS(ArcDecomposition(100, 0.0), DomainError);
}

TEST_CASE("classification examples") {
  const ArcDecomposition arcs(1000000, 2.0);
  const auto zero = arc_classify(arcs, Rational(0));
  CHECK(zero.major);
  CHECK(zero.center == FareyPoint{0, 1, 0});
  CHECK(arc_classify(arcs, Rational(1, 2)).major);
  CHECK(arc_classify(arcs, Rational(1, 2)).center.q == 2);
  CHECK_FALSE(arc_classify(arcs, Rational(501, 1000)).major);
  CHECK(arc_classify(arcs, Rational(500001, 1000000)).major);  // within 1e-6 of 1/2
  CHECK(arc_classify(arcs, Rational(-1, 3)).center == make_farey_point(2, 3));
  // large alpha swallows everything
  const ArcDecomposition wide(1000, 40.0);
  CHECK(arc_classify(wide, Rational(501, 1000)).major);
}

TEST_CASE("the witness is the smallest admissible denominator") {
  std::mt19937_64 rng(31);
  const ArcDecomposition arcs(100000, 1.5);
  const std::int64_t qm = arcs.q_max();
  const long double hw = arcs.halfwidth();
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 100000);
    const Rational xi(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den)), den);
    std::int64_t best_q = 0;
    for (std::int64_t q = 1; q <= qm && !best_q; ++q)
      for (std::int64_t a = 0; a <= q; ++a) {
        const long double d = std::abs(xi.to_long_double() - static_cast<long double>(a) / q);
        if (d <= hw * (1 - 1e-12L)) {
          best_q = q;
          break;
        }
      }
    const auto cls = arc_classify(arcs, xi);
    if (best_q) {
      REQUIRE(cls.major);
      REQUIRE(cls.center.q == best_q);
    } else if (cls.major) {
      // only a boundary case can disagree with the floating scan
      const long double d = std::abs(xi.to_long_double() - cls.center.value().to_long_double());
      REQUIRE(std::abs(std::min(d, 1 - d) - hw) <= hw * 1e-9L);
    }
  }
}

}  // TEST_SUITE
