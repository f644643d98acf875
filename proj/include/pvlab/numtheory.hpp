#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pvlab/rational.hpp"

namespace pvlab {

/// Exact sum of log p values. Every log p with p >= 2 is a double >= log 2 > 1/2,
/// hence an integer multiple of 2^-53; the sum is kept as that integer.
class ExactLogSum {
 public:
  static constexpr int kFractionBits = 53;

  void add_log(std::uint64_t p);
  ExactLogSum& operator+=(const ExactLogSum& o) {
    units_ += o.units_;
    return *this;
  }
  // Correctly rounded double of the exact sum.
  double value() const;
  __int128 units() const { return units_; }
  friend bool operator==(const ExactLogSum&, const ExactLogSum&) = default;

 private:
  __int128 units_ = 0;
};

/// Primes up to n_max with Chebyshev prefix sums theta(x) = sum_{p <= x} log p.
class PrimeTable {
 public:
  // Segmented sieve of Eratosthenes. Throws DomainError if n_max < 2.
  explicit PrimeTable(std::uint64_t n_max);

  // Rebuild from a stored prime list (see prime cache I/O); validates it.
  static PrimeTable from_primes(std::uint64_t n_max, std::vector<std::uint64_t> primes);

  std::uint64_t n_max() const { return n_max_; }
  bool is_prime(std::uint64_t n) const;
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::span<const std::uint64_t> primes_up_to(std::uint64_t x) const;
  std::size_t prime_count(std::uint64_t x) const { return primes_up_to(x).size(); }
  double theta(std::uint64_t x) const;
  ExactLogSum theta_exact(std::uint64_t x) const;

 private:
  PrimeTable() = default;
  void build_prefix();

  std::uint64_t n_max_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> primes_;
  std::vector<double> theta_prefix_;
};

PrimeTable sieve(std::uint64_t n_max);

// psi(x; q, r) = sum of log p over primes p <= x with p = r (mod q).
// Preconditions: 2 <= x <= n_max (RangeError above), 1 <= r <= q.
double chebyshev_psi_progression(const PrimeTable& table, std::uint64_t x, std::uint64_t q,
                                 std::uint64_t r);
ExactLogSum chebyshev_psi_progression_exact(const PrimeTable& table, std::uint64_t x,
                                            std::uint64_t q, std::uint64_t r);

/// phi, mu and d. Linear-sieve tables up to q_max; trial factorization above.
class ArithmeticFunctions {
 public:
  static constexpr std::uint64_t kDefaultLimit = std::uint64_t{1} << 16;

  explicit ArithmeticFunctions(std::uint64_t q_max = kDefaultLimit);

  std::uint64_t q_max() const { return q_max_; }
  std::uint64_t phi(std::uint64_t q) const;
  int mu(std::uint64_t q) const;
  std::uint64_t divisor_count(std::uint64_t q) const;

 private:
  std::uint64_t q_max_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> d_;
};

// Shared immutable instance with the default limit.
const ArithmeticFunctions& arith();

struct RatioWitness {
  double max_ratio = 0.0;
  std::uint64_t argmax = 1;
};

// max over q <= q_max of q^{1-eps} / phi(q): the empirical constant behind the
// totient lower bound.
RatioWitness totient_ratio_max(std::uint64_t q_max, double eps);
// max over q <= q_max of d(q) / q^eps.
RatioWitness divisor_ratio_max(std::uint64_t q_max, double eps);

// A_q: a in [1, q] with gcd(a, q) = 1, ascending.
std::vector<std::uint64_t> reduced_residues(std::uint64_t q);

// sum over r in A_q of e^{2 pi i r a / q}; PreconditionError unless gcd(a, q) = 1.
std::complex<double> ramanujan_sum_check(std::uint64_t q, std::int64_t a);

/// Reduced fraction a/q on the torus with its dyadic level 2^t <= q < 2^{t+1}.
/// Zero is 0/1 at level 0.
struct FareyPoint {
  std::int64_t a = 0;
  std::int64_t q = 1;
  int t = 0;

  Rational value() const { return Rational(a, q); }
  friend bool operator==(const FareyPoint&, const FareyPoint&) = default;
};

int dyadic_level(std::uint64_t q);
FareyPoint make_farey_point(std::int64_t a, std::int64_t q);

// R_t: level 0 is {0/1}; level t >= 1 lists a/q with 2^t <= q < 2^{t+1}
// (and q <= q_cap when given), ordered by q then a.
std::vector<FareyPoint> farey_level(int t, std::optional<std::uint64_t> q_cap = std::nullopt);

struct InversionSides {
  std::complex<double> left;
  std::complex<double> right;
  std::size_t terms = 0;
};

// sum_{a in A_q} F(a/q)  versus  sum_{b | q} mu(q/b) sum_{a=1}^{b} F(a/b).
InversionSides moebius_inversion_check(const std::function<std::complex<double>(const Rational&)>& F,
                                       std::uint64_t q);

// Prime cache: 16-byte header {"PVL1", u32 version, u64 n_max} then the primes as
// little-endian u64 deltas.
void save_prime_cache(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable load_prime_cache(const std::filesystem::path& path);

}  // namespace pvlab
