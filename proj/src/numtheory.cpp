#include "pvlab/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pvlab/errors.hpp"
#include "pvlab/phase.hpp"
#include "pvlab/summation.hpp"

namespace pvlab {

void ExactLogSum::add_log(std::uint64_t p) {
  const double lp = std::log(static_cast<double>(p));
  units_ += static_cast<__int128>(std::ldexp(lp, kFractionBits));
}

double ExactLogSum::value() const {
  return std::ldexp(static_cast<double>(units_), -kFractionBits);
}

namespace {

constexpr std::uint64_t kSegmentBits = std::uint64_t{1} << 18;

void set_bit(std::vector<std::uint64_t>& bits, std::uint64_t n) { bits[n >> 6] |= std::uint64_t{1} << (n & 63); }

bool get_bit(const std::vector<std::uint64_t>& bits, std::uint64_t n) {
  return (bits[n >> 6] >> (n & 63)) & 1u;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t n_max) : n_max_(n_max) {
  if (n_max < 2) throw DomainError("sieve requires n_max >= 2, got " + std::to_string(n_max));
  bits_.assign(n_max / 64 + 1, 0);

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n_max))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  small[0] = 0;
  small[1] = 0;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<char> composite(kSegmentBits);
  for (std::uint64_t lo = 0; lo <= n_max; lo += kSegmentBits) {
    const std::uint64_t hi = std::min(n_max, lo + kSegmentBits - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (const auto p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= hi; m += p) composite[m - lo] = 1;
    }
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
      if (!composite[n - lo]) {
        set_bit(bits_, n);
        primes_.push_back(n);
      }
    }
  }
  build_prefix();
}

PrimeTable PrimeTable::from_primes(std::uint64_t n_max, std::vector<std::uint64_t> primes) {
  if (n_max < 2) throw DomainError("prime table requires n_max >= 2");
  PrimeTable t;
  t.n_max_ = n_max;
  t.bits_.assign(n_max / 64 + 1, 0);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (primes[i] > n_max || (i > 0 && primes[i] <= primes[i - 1]) || primes[i] < 2)
      throw DomainError("stored prime list is not strictly ascending within [2, n_max]");
    set_bit(t.bits_, primes[i]);
  }
  t.primes_ = std::move(primes);
  t.build_prefix();
  return t;
}

void PrimeTable::build_prefix() {
  theta_prefix_.resize(primes_.size());
  ExactLogSum acc;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    acc.add_log(primes_[i]);
    theta_prefix_[i] = acc.value();
  }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > n_max_) throw RangeError("is_prime(" + std::to_string(n) + ") beyond n_max " + std::to_string(n_max_));
  return get_bit(bits_, n);
}

std::span<const std::uint64_t> PrimeTable::primes_up_to(std::uint64_t x) const {
  const auto end = std::upper_bound(primes_.begin(), primes_.end(), x);
  return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

double PrimeTable::theta(std::uint64_t x) const {
  if (x > n_max_) throw RangeError("theta(" + std::to_string(x) + ") beyond n_max " + std::to_string(n_max_));
  const auto count = primes_up_to(x).size();
  return count == 0 ? 0.0 : theta_prefix_[count - 1];
}

ExactLogSum PrimeTable::theta_exact(std::uint64_t x) const {
  if (x > n_max_) throw RangeError("theta(" + std::to_string(x) + ") beyond n_max " + std::to_string(n_max_));
  ExactLogSum s;
  for (const auto p : primes_up_to(x)) s.add_log(p);
  return s;
}

PrimeTable sieve(std::uint64_t n_max) { return PrimeTable(n_max); }

ExactLogSum chebyshev_psi_progression_exact(const PrimeTable& table, std::uint64_t x, std::uint64_t q,
                                            std::uint64_t r) {
  if (x > table.n_max())
    throw RangeError("psi(x; q, r) with x = " + std::to_string(x) + " beyond n_max " + std::to_string(table.n_max()));
  if (x < 2) throw DomainError("psi(x; q, r) requires x >= 2");
  if (q < 1 || r < 1 || r > q) throw DomainError("psi(x; q, r) requires 1 <= r <= q");
  const std::uint64_t residue = r % q;
  ExactLogSum s;
  for (const auto p : table.primes_up_to(x))
    if (p % q == residue) s.add_log(p);
  return s;
}

double chebyshev_psi_progression(const PrimeTable& table, std::uint64_t x, std::uint64_t q, std::uint64_t r) {
  return chebyshev_psi_progression_exact(table, x, q, r).value();
}

// --- arithmetic functions -------------------------------------------------

ArithmeticFunctions::ArithmeticFunctions(std::uint64_t q_max) : q_max_(q_max) {
  if (q_max < 1) throw DomainError("arithmetic function tables need q_max >= 1");
  phi_.assign(q_max + 1, 0);
  mu_.assign(q_max + 1, 0);
  d_.assign(q_max + 1, 0);
  // Exponent of the smallest prime factor, for d.
  std::vector<std::uint32_t> lp_exp(q_max + 1, 0);
  std::vector<std::uint32_t> primes;
  std::vector<char> composite(q_max + 1, 0);
  phi_[1] = 1;
  mu_[1] = 1;
  d_[1] = 1;
  for (std::uint64_t i = 2; i <= q_max; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      phi_[i] = static_cast<std::uint32_t>(i - 1);
      mu_[i] = -1;
      d_[i] = 2;
      lp_exp[i] = 1;
    }
    for (const auto p : primes) {
      const std::uint64_t m = i * p;
      if (m > q_max) break;
      composite[m] = 1;
      if (i % p == 0) {
        phi_[m] = phi_[i] * p;
        mu_[m] = 0;
        lp_exp[m] = lp_exp[i] + 1;
        d_[m] = d_[i] / (lp_exp[i] + 1) * (lp_exp[m] + 1);
        break;
      }
      phi_[m] = phi_[i] * (p - 1);
      mu_[m] = static_cast<std::int8_t>(-mu_[i]);
      lp_exp[m] = 1;
      d_[m] = d_[i] * 2;
    }
  }
}

namespace {

struct Factor {
  std::uint64_t p;
  int k;
};

std::vector<Factor> trial_factor(std::uint64_t q) {
  std::vector<Factor> out;
  for (std::uint64_t p = 2; p * p <= q; p += (p == 2 ? 1 : 2)) {
    if (q % p) continue;
    int k = 0;
    while (q % p == 0) {
      q /= p;
      ++k;
    }
    out.push_back({p, k});
  }
  if (q > 1) out.push_back({q, 1});
  return out;
}

}  // namespace

std::uint64_t ArithmeticFunctions::phi(std::uint64_t q) const {
  if (q == 0) throw DomainError("phi(0) is undefined");
  if (q <= q_max_) return phi_[q];
  std::uint64_t r = q;
  for (const auto& f : trial_factor(q)) r = r / f.p * (f.p - 1);
  return r;
}

int ArithmeticFunctions::mu(std::uint64_t q) const {
  if (q == 0) throw DomainError("mu(0) is undefined");
  if (q <= q_max_) return mu_[q];
  int sign = 1;
  for (const auto& f : trial_factor(q)) {
    if (f.k > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t ArithmeticFunctions::divisor_count(std::uint64_t q) const {
  if (q == 0) throw DomainError("d(0) is undefined");
  if (q <= q_max_) return d_[q];
  std::uint64_t r = 1;
  for (const auto& f : trial_factor(q)) r *= static_cast<std::uint64_t>(f.k + 1);
  return r;
}

const ArithmeticFunctions& arith() {
  static const ArithmeticFunctions instance;
  return instance;
}

RatioWitness totient_ratio_max(std::uint64_t q_max, double eps) {
  std::optional<ArithmeticFunctions> local;
  const ArithmeticFunctions* fns = &arith();
  if (q_max > fns->q_max()) fns = &local.emplace(q_max);
  RatioWitness w;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    const double ratio = std::pow(static_cast<double>(q), 1.0 - eps) / static_cast<double>(fns->phi(q));
    if (ratio > w.max_ratio) w = {ratio, q};
  }
  return w;
}

RatioWitness divisor_ratio_max(std::uint64_t q_max, double eps) {
  std::optional<ArithmeticFunctions> local;
  const ArithmeticFunctions* fns = &arith();
  if (q_max > fns->q_max()) fns = &local.emplace(q_max);
  RatioWitness w;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    const double ratio = static_cast<double>(fns->divisor_count(q)) / std::pow(static_cast<double>(q), eps);
    if (ratio > w.max_ratio) w = {ratio, q};
  }
  return w;
}

std::vector<std::uint64_t> reduced_residues(std::uint64_t q) {
  if (q < 1) throw DomainError("reduced_residues requires q >= 1");
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 1; a <= q; ++a)
    if (std::gcd(a, q) == 1) out.push_back(a);
  return out;
}

std::complex<double> ramanujan_sum_check(std::uint64_t q, std::int64_t a) {
  if (q < 1) throw DomainError("ramanujan sum requires q >= 1");
  const auto g = std::gcd(static_cast<std::uint64_t>(a < 0 ? -a : a), q);
  if (g != 1)
    throw PreconditionError("ramanujan identity needs gcd(a, q) = 1; got gcd(" + std::to_string(a) + ", " +
                            std::to_string(q) + ") = " + std::to_string(g));
  ComplexCompensatedSum s;
  const Rational step(a, static_cast<std::int64_t>(q));
  for (const auto r : reduced_residues(q)) s += phase(step, static_cast<std::int64_t>(r));
  return s.value();
}

int dyadic_level(std::uint64_t q) {
  int t = 0;
  while ((q >> (t + 1)) != 0) ++t;
  return t;
}

FareyPoint make_farey_point(std::int64_t a, std::int64_t q) {
  if (q < 1) throw DomainError("farey point needs q >= 1");
  const Rational r = torus(Rational(a, q));
  if (r.num == 0) return {0, 1, 0};
  return {r.num, r.den, dyadic_level(static_cast<std::uint64_t>(r.den))};
}

std::vector<FareyPoint> farey_level(int t, std::optional<std::uint64_t> q_cap) {
  if (t < 0) throw DomainError("farey_level requires t >= 0");
  if (t == 0) return {FareyPoint{0, 1, 0}};
  if (t > 40) throw DomainError("farey_level t too large to enumerate");
  std::uint64_t q_hi = (std::uint64_t{1} << (t + 1)) - 1;
  if (q_cap) q_hi = std::min(q_hi, *q_cap);
  std::vector<FareyPoint> out;
  for (std::uint64_t q = std::uint64_t{1} << t; q <= q_hi; ++q)
    for (std::uint64_t a = 1; a < q; ++a)
      if (std::gcd(a, q) == 1) out.push_back({static_cast<std::int64_t>(a), static_cast<std::int64_t>(q), t});
  return out;
}

InversionSides moebius_inversion_check(const std::function<std::complex<double>(const Rational&)>& F,
                                       std::uint64_t q) {
  if (q < 1) throw DomainError("moebius_inversion_check requires q >= 1");
  InversionSides out;
  ComplexCompensatedSum left, right;
  const auto Q = static_cast<std::int64_t>(q);
  for (const auto a : reduced_residues(q)) {
    left += F(Rational(static_cast<std::int64_t>(a), Q));
    ++out.terms;
  }
  for (std::int64_t b = 1; b <= Q; ++b) {
    if (Q % b) continue;
    const int m = arith().mu(static_cast<std::uint64_t>(Q / b));
    if (m == 0) continue;
    ComplexCompensatedSum inner;
    for (std::int64_t a = 1; a <= b; ++a) {
      inner += F(Rational(a, b));
      ++out.terms;
    }
    right += static_cast<double>(m) * inner.value();
  }
  out.left = left.value();
  out.right = right.value();
  return out;
}

}  // namespace pvlab
