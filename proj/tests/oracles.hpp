#pragma once

// Independent brute-force references used by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Every increasing index subsequence, by depth-first search. cost(d) = |d|^r.
inline double variation_exhaustive(std::span<const double> a, double r) {
  double best = 0.0;
  std::function<void(std::size_t, long double)> dfs = [&](std::size_t last, long double acc) {
    best = std::max(best, static_cast<double>(acc));
    for (std::size_t n = last + 1; n < a.size(); ++n)
      dfs(n, acc + std::pow(static_cast<long double>(std::abs(a[n] - a[last])), static_cast<long double>(r)));
  };
  for (std::size_t s = 0; s < a.size(); ++s) dfs(s, 0.0L);
  return std::pow(best, 1.0 / r);
}

// Integer-valued sequences: jump costs from a small table, long double sums.
inline double variation_exhaustive_small(std::span<const int> a, double r) {
  long double cost[9];
  for (int d = 0; d < 9; ++d) cost[d] = std::pow(static_cast<long double>(d), static_cast<long double>(r));
  long double best = 0.0L;
  const std::size_t n = a.size();
  std::function<void(std::size_t, long double)> dfs = [&](std::size_t last, long double acc) {
    if (acc > best) best = acc;
    for (std::size_t k = last + 1; k < n; ++k) dfs(k, acc + cost[std::abs(a[k] - a[last])]);
  };
  for (std::size_t s = 0; s < n; ++s) dfs(s, 0.0L);
  return static_cast<double>(std::pow(best, 1.0L / static_cast<long double>(r)));
}

// Composite Simpson on [a, b] with n (even) panels, long double.
template <typename F>
long double simpson(F&& f, long double a, long double b, std::size_t n) {
  if (n % 2) ++n;
  const long double h = (b - a) / static_cast<long double>(n);
  long double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + h * static_cast<long double>(i));
  return s * h / 3.0L;
}

// Si(x) by Simpson quadrature of sin(u)/u, moderate x only.
inline double si_quadrature(double x) {
  const auto f = [](long double u) { return u == 0.0L ? 1.0L : std::sin(u) / u; };
  return static_cast<double>(simpson(f, 0.0L, static_cast<long double>(x), 200000));
}

// Normalized bump and eta by direct quadrature of the convolution.
inline long double bump(long double x) {
  const long double s = 8.0L * x, d = 1.0L - s * s;
  return d > 0.0L ? std::exp(-1.0L / d) : 0.0L;
}

inline double eta_quadrature(double x) {
  const long double mass = simpson(bump, -0.125L, 0.125L, 20000);
  const long double lo = std::max(-0.125L, static_cast<long double>(x) - 0.375L);
  const long double hi = std::min(0.125L, static_cast<long double>(x) + 0.375L);
  if (hi <= lo) return 0.0;
  return static_cast<double>(simpson(bump, lo, hi, 20000) / mass);
}

// Naive exponential sum with std::polar on floating phases.
inline std::complex<double> naive_prime_sum(double xi, std::uint64_t N) {
  std::complex<long double> s = 0.0L;
  for (std::uint64_t p = 2; p <= N; ++p)
    if (is_prime_trial(p)) {
      const long double ph = 2.0L * std::numbers::pi_v<long double> * xi * static_cast<long double>(p);
      s += std::polar(std::log(static_cast<long double>(p)) / static_cast<long double>(N), ph);
    }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

}  // namespace oracle
