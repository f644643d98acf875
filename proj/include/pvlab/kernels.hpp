#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pvlab/numtheory.hpp"

namespace pvlab {

enum class KernelFamily { avg, hilbert, avg_unweighted };

std::string_view to_string(KernelFamily f);
KernelFamily parse_kernel_family(std::string_view s);  // ConfigError on unknown names

struct KernelEntry {
  std::int64_t site = 0;
  double weight = 0.0;
};

/// Finitely supported signed kernel on Z, entries sorted by site.
///   avg:            log p / N at p <= N
///   hilbert:        +-log p / p at +-p, p <= N (odd)
///   avg_unweighted: 1 / pi(N) at p <= N
struct SparseKernel {
  KernelFamily family = KernelFamily::avg;
  std::int64_t N = 0;
  std::vector<KernelEntry> entries;

  double mass() const;      // compensated sum of weights
  double l1_norm() const;
  std::int64_t min_site() const;
  std::int64_t max_site() const;
};

// RangeError when N > n_max, DomainError when N < 2.
SparseKernel build_kernel(const PrimeTable& table, KernelFamily family, std::int64_t N);

/// Values of f on [lo, lo + values.size() - 1], zero elsewhere.
struct FiniteSignal {
  std::int64_t lo = 0;
  std::vector<double> values;

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(values.size()) - 1; }
  double at(std::int64_t x) const;
  double l1_norm() const;

  static FiniteSignal delta(std::int64_t at = 0) { return {at, {1.0}}; }
};

/// (k * f)(x) = sum over entries of w f(x - site), on [lo + min site, hi + max site].
/// SizeError if the window does not fit in int64.
FiniteSignal convolve(const SparseKernel& k, const FiniteSignal& f);

/// (K_N * f)(x) for each N in Ns (ascending, within [2, n_max]). Sums over
/// primes are carried across N and only newly admitted primes are added.
std::vector<double> trajectory(const PrimeTable& table, KernelFamily family, const FiniteSignal& f,
                               std::span<const std::int64_t> Ns, std::int64_t x);

/// trajectory() at several points, parallel over xs; row i belongs to xs[i]
/// and is bit-identical to a single-point call.
std::vector<std::vector<double>> trajectories(const PrimeTable& table, KernelFamily family,
                                              const FiniteSignal& f,
                                              std::span<const std::int64_t> Ns,
                                              std::span<const std::int64_t> xs);

/// ||K_N - K_{N-1}||_1 from closed forms; N >= 3.
double kernel_l1_difference(const PrimeTable& table, KernelFamily family, std::int64_t N);

/// m(xi) = sum over entries of w e^{2 pi i xi site}.
std::complex<double> kernel_multiplier(const SparseKernel& k, double xi);

// CSV: "# label=..., N=..." line, then "site,weight" and one row per entry.
void write_kernel_csv(std::ostream& os, const SparseKernel& k);

namespace serial {

// Batch reference for trajectory(): one full convolution per N.
std::vector<double> trajectory_batch(const PrimeTable& table, KernelFamily family,
                                     const FiniteSignal& f, std::span<const std::int64_t> Ns,
                                     std::int64_t x);

}  // namespace serial

}  // namespace pvlab
