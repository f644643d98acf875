#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pvlab/errors.hpp"
#include "pvlab/numtheory.hpp"
#include "pvlab/phase.hpp"

using namespace pvlab;

TEST_SUITE("numtheory") {

TEST_CASE("sieve matches trial division and known counts") {
  const PrimeTable t(100000);
  for (std::uint64_t n = 0; n <= 5000; ++n) CHECK(t.is_prime(n) == oracle::is_prime_trial(n));
  CHECK(t.primes().front() == 2);
  CHECK(t.prime_count(10) == 4);
  CHECK(t.prime_count(100) == 25);
  CHECK(t.prime_count(1000) == 168);
  CHECK(t.prime_count(10000) == 1229);
  CHECK(t.prime_count(100000) == 9592);
  for (std::size_t i = 1; i < t.primes().size(); ++i) REQUIRE(t.primes()[i] > t.primes()[i - 1]);
  CHECK_THROWS_AS(t.is_prime(100001), RangeError);
}

TEST_CASE("sieve edge cases") {
  CHECK_THROWS_AS(PrimeTable(1), DomainError);
  CHECK_THROWS_AS(PrimeTable(0), DomainError);
  const PrimeTable two(2);
  REQUIRE(two.primes().size() == 1);
  CHECK(two.theta(2) == std::log(2.0));
  // Segment boundaries: a prime straddling a 2^15-ish segment edge must survive.
  const PrimeTable t(70000);
  CHECK(t.is_prime(65521));
  CHECK(t.is_prime(65537));
  CHECK_FALSE(t.is_prime(65535));
}

TEST_CASE("theta against high-precision values") {
  const PrimeTable t(1000000);
  struct Ref { std::uint64_t x; double theta; };
  // Reference values computed with 40-digit arithmetic.
  const Ref refs[] = {{10, 5.3471075307174686805},     {100, 83.728390399063922945},
                      {1000, 956.24526512005886781},   {10000, 9895.9913791569873127},
                      {100000, 99685.389268612550837}, {1000000, 998484.17502563429213}};
  for (const auto& r : refs) CHECK(std::abs(t.theta(r.x) - r.theta) <= 1e-9 * r.theta);
  CHECK(t.prime_count(1000000) == 78498);
  CHECK(std::abs(t.theta(1000000) / 1e6 - 0.99848) < 1e-5);
  CHECK(t.theta(10) == doctest::Approx(std::log(210.0)).epsilon(1e-15));
}

TEST_CASE("theta prefix is nondecreasing and matches a direct sum") {
  const PrimeTable t(50000);
  double prev = 0.0;
  for (std::uint64_t x = 2; x <= 50000; ++x) {
    const double v = t.theta(x);
    REQUIRE(v >= prev);
    prev = v;
  }
  long double direct = 0.0L;
  for (auto p : t.primes()) direct += std::log(static_cast<long double>(p));
  CHECK(std::abs(t.theta(50000) - static_cast<double>(direct)) <= 1e-9 * static_cast<double>(t.primes().size()));
}

TEST_CASE("psi over progressions") {
  const PrimeTable t(10000);
  CHECK(chebyshev_psi_progression(t, 20, 3, 1) == doctest::Approx(std::log(1729.0)).epsilon(1e-15));
  CHECK(std::abs(chebyshev_psi_progression(t, 20, 3, 1) - 7.4552984856832905012) < 1e-13);
  CHECK(std::abs(chebyshev_psi_progression(t, 100, 4, 3) - 43.900884228107771297) < 1e-12);
  for (std::uint64_t x : {2u, 17u, 1000u, 9973u}) CHECK(chebyshev_psi_progression(t, x, 1, 1) == t.theta(x));
  CHECK_THROWS_AS(chebyshev_psi_progression(t, 10001, 3, 1), RangeError);
}

TEST_CASE("psi over A_q plus primes dividing q recovers theta exactly") {
  const PrimeTable t(10000);
  for (std::uint64_t q = 1; q <= 50; ++q) {
    for (std::uint64_t x : {2u, 97u, 1000u, 4567u, 10000u}) {
      ExactLogSum s;
      for (auto r : reduced_residues(q)) s += chebyshev_psi_progression_exact(t, x, q, r);
      for (auto p : t.primes_up_to(std::min<std::uint64_t>(x, q)))
        if (q % p == 0) s.add_log(p);
      REQUIRE(s == t.theta_exact(x));
      REQUIRE(s.value() == t.theta(x));
    }
  }
}

TEST_CASE("arithmetic functions") {
  const auto& af = arith();
  CHECK(af.phi(1) == 1);
  CHECK(af.phi(12) == 4);
  CHECK(af.phi(97) == 96);
  CHECK(af.mu(1) == 1);
  CHECK(af.mu(6) == 1);
  CHECK(af.mu(30) == -1);
  CHECK(af.mu(12) == 0);
  CHECK(af.divisor_count(12) == 6);
  // Beyond the sieve table: trial factorization.
  const std::uint64_t big = 2ULL * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23;  // 223092870
  CHECK(af.mu(big) == -1);
  CHECK(af.phi(big) == 1ULL * 2 * 4 * 6 * 10 * 12 * 16 * 18 * 22);
  CHECK(af.divisor_count(big) == 512);
  CHECK(af.phi(65537ULL * 65537ULL) == 65537ULL * 65536ULL);
  // Multiplicativity on coprime pairs, prime powers.
  for (std::uint64_t a = 1; a <= 60; ++a)
    for (std::uint64_t b = 1; b <= 60; ++b)
      if (std::gcd(a, b) == 1) {
        REQUIRE(af.phi(a * b) == af.phi(a) * af.phi(b));
        REQUIRE(af.divisor_count(a * b) == af.divisor_count(a) * af.divisor_count(b));
        REQUIRE(af.mu(a * b) == af.mu(a) * af.mu(b));
      }
  CHECK(af.phi(3 * 3 * 3 * 3) == 81 - 27);
}

TEST_CASE("totient and divisor ratio witnesses are finite") {
  const auto t = totient_ratio_max(1 << 16, 0.1);
  CHECK(t.max_ratio > 1.0);
  CHECK(t.max_ratio < 20.0);
  const auto d = divisor_ratio_max(1 << 16, 0.5);
  CHECK(d.max_ratio > 1.0);
  CHECK(d.max_ratio < 20.0);
}

TEST_CASE("reduced residues") {
  CHECK(reduced_residues(6) == std::vector<std::uint64_t>{1, 5});
  CHECK(reduced_residues(1) == std::vector<std::uint64_t>{1});
  CHECK(reduced_residues(12) == std::vector<std::uint64_t>{1, 5, 7, 11});
  for (std::uint64_t q = 1; q <= 300; ++q) REQUIRE(reduced_residues(q).size() == arith().phi(q));
}

TEST_CASE("Ramanujan sums") {
  CHECK(std::abs(ramanujan_sum_check(6, 1) - 1.0) < 1e-15);
  CHECK(std::abs(ramanujan_sum_check(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(ramanujan_sum_check(4, 1)) < 1e-15);
  CHECK_THROWS_AS(ramanujan_sum_check(6, 2), PreconditionError);
  for (std::uint64_t q = 1; q <= 120; ++q)
    for (auto a : reduced_residues(q))
      REQUIRE(std::abs(ramanujan_sum_check(q, static_cast<std::int64_t>(a)) - double(arith().mu(q))) < 1e-9);
}

TEST_CASE("Farey levels") {
  const auto l0 = farey_level(0);
  REQUIRE(l0.size() == 1);
  CHECK(l0[0] == FareyPoint{0, 1, 0});
  const auto l1 = farey_level(1);
  REQUIRE(l1.size() == 3);
  CHECK(l1[0] == FareyPoint{1, 2, 1});
  CHECK(l1[1] == FareyPoint{1, 3, 1});
  CHECK(l1[2] == FareyPoint{2, 3, 1});
  CHECK(farey_level(2).size() == 14);
  for (int t = 1; t <= 10; ++t) {
    std::size_t expect = 0;
    for (std::uint64_t q = 1ULL << t; q < (2ULL << t); ++q) expect += arith().phi(q);
    const auto lv = farey_level(t);
    REQUIRE(lv.size() == expect);
    for (const auto& p : lv) {
      REQUIRE(std::gcd(p.a, p.q) == 1);
      REQUIRE(dyadic_level(static_cast<std::uint64_t>(p.q)) == t);
    }
  }
  CHECK(farey_level(3, 9).size() == 4 + 6);  // q = 8, 9
  CHECK(make_farey_point(1, 1) == FareyPoint{0, 1, 0});
  CHECK(make_farey_point(6, 8) == FareyPoint{3, 4, 2});
}

TEST_CASE("Moebius inversion") {
  const auto one = [](const Rational&) { return std::complex<double>(1.0, 0.0); };
  auto s = moebius_inversion_check(one, 6);
  CHECK(std::abs(s.left - 2.0) < 1e-15);
  CHECK(std::abs(s.right - 2.0) < 1e-15);
  const auto e = [](const Rational& x) { return phase(x, 1); };
  s = moebius_inversion_check(e, 4);
  CHECK(std::abs(s.left) < 1e-15);
  CHECK(std::abs(s.right) < 1e-15);
  s = moebius_inversion_check([](const Rational& x) { return std::complex<double>(x.to_double() + 0.5, 0.0); }, 1);
  CHECK(s.left == s.right);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
    const auto F = [&](const Rational& x) {
      const double v = x.to_double();
      return std::complex<double>(c1 * std::exp(v) + c2 * v * v, c3 * std::sin(7 * v));
    };
    for (std::uint64_t q = 1; q <= 200; ++q) {
      const auto r = moebius_inversion_check(F, q);
      REQUIRE(std::abs(r.left - r.right) <= 1e-9 * std::max(1.0, std::abs(r.left)));
    }
  }
}

TEST_CASE("prime cache round trip and validation") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "pvlab_cache_test.bin";
  const PrimeTable t(100000);
  save_prime_cache(t, path);
  CHECK(std::filesystem::file_size(path) == 16 + 8 * t.primes().size());
  const PrimeTable back = load_prime_cache(path);
  CHECK(back.n_max() == t.n_max());
  CHECK(std::equal(back.primes().begin(), back.primes().end(), t.primes().begin(), t.primes().end()));
  CHECK(back.theta(100000) == t.theta(100000));
  {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << "PVL2garbage";
  }
  CHECK_THROWS_AS(load_prime_cache(path), IoError);
  CHECK_THROWS_AS(load_prime_cache(dir / "pvlab_no_such_file.bin"), IoError);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
