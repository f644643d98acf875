#include "pvlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "pvlab/csv.hpp"
#include "pvlab/errors.hpp"
#include "pvlab/parallel.hpp"
#include "pvlab/phase.hpp"
#include "pvlab/summation.hpp"

namespace pvlab {

std::string_view to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::avg: return "avg";
    case KernelFamily::hilbert: return "hilbert";
    case KernelFamily::avg_unweighted: return "avg_unweighted";
  }
  return "?";
}

KernelFamily parse_kernel_family(std::string_view s) {
  if (s == "avg") return KernelFamily::avg;
  if (s == "hilbert") return KernelFamily::hilbert;
  if (s == "avg_unweighted") return KernelFamily::avg_unweighted;
  throw ConfigError("unknown family '" + std::string(s) + "' (avg | hilbert | avg_unweighted)");
}

double SparseKernel::mass() const {
  CompensatedSum s;
  for (const auto& e : entries) s += e.weight;
  return s.value();
}

double SparseKernel::l1_norm() const {
  CompensatedSum s;
  for (const auto& e : entries) s += std::abs(e.weight);
  return s.value();
}

std::int64_t SparseKernel::min_site() const { return entries.empty() ? 0 : entries.front().site; }
std::int64_t SparseKernel::max_site() const { return entries.empty() ? 0 : entries.back().site; }

namespace {

void check_N(const PrimeTable& table, std::int64_t N) {
  if (N < 2) throw DomainError("kernel truncation N must be >= 2");
  if (static_cast<std::uint64_t>(N) > table.n_max())
    throw RangeError("N = " + std::to_string(N) + " exceeds the sieve limit " +
                     std::to_string(table.n_max()));
}

}  // namespace

SparseKernel build_kernel(const PrimeTable& table, KernelFamily family, std::int64_t N) {
  check_N(table, N);
  const auto ps = table.primes_up_to(static_cast<std::uint64_t>(N));
  SparseKernel k{family, N, {}};
  const double n = static_cast<double>(N);
  switch (family) {
    case KernelFamily::avg:
      k.entries.reserve(ps.size());
      for (auto p : ps) k.entries.push_back({static_cast<std::int64_t>(p), std::log(static_cast<double>(p)) / n});
      break;
    case KernelFamily::avg_unweighted: {
      const double w = 1.0 / static_cast<double>(ps.size());
      for (auto p : ps) k.entries.push_back({static_cast<std::int64_t>(p), w});
      break;
    }
    case KernelFamily::hilbert:
      k.entries.resize(2 * ps.size());
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const double p = static_cast<double>(ps[i]);
        const double w = std::log(p) / p;
        k.entries[ps.size() - 1 - i] = {-static_cast<std::int64_t>(ps[i]), -w};
        k.entries[ps.size() + i] = {static_cast<std::int64_t>(ps[i]), w};
      }
      break;
  }
  return k;
}

double FiniteSignal::at(std::int64_t x) const {
  if (values.empty() || x < lo || x > hi()) return 0.0;
  return values[static_cast<std::size_t>(x - lo)];
}

double FiniteSignal::l1_norm() const {
  CompensatedSum s;
  for (double v : values) s += std::abs(v);
  return s.value();
}

FiniteSignal convolve(const SparseKernel& k, const FiniteSignal& f) {
  if (k.entries.empty() || f.values.empty()) return {0, {}};
  std::int64_t lo = 0, hi = 0;
  if (__builtin_add_overflow(f.lo, k.min_site(), &lo) ||
      __builtin_add_overflow(f.hi(), k.max_site(), &hi))
    throw SizeError("convolution window overflows int64");
  const auto width = static_cast<unsigned __int128>(hi - lo) + 1;
  if (width > std::numeric_limits<std::size_t>::max() / sizeof(double))
    throw SizeError("convolution window too large");
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(width));
  for (const auto& e : k.entries) {
    const std::size_t base = static_cast<std::size_t>(f.lo + e.site - lo);
    for (std::size_t i = 0; i < f.values.size(); ++i) acc[base + i] += e.weight * f.values[i];
  }
  FiniteSignal out{lo, std::vector<double>(acc.size())};
  for (std::size_t i = 0; i < acc.size(); ++i) out.values[i] = acc[i].value();
  return out;
}

namespace {

void check_ladder(const PrimeTable& table, std::span<const std::int64_t> Ns) {
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    check_N(table, Ns[i]);
    if (i > 0 && Ns[i] <= Ns[i - 1]) throw DomainError("N ladder must be strictly ascending");
  }
}

std::vector<double> trajectory_unchecked(const PrimeTable& table, KernelFamily family,
                                         const FiniteSignal& f, std::span<const std::int64_t> Ns,
                                         std::int64_t x) {
  std::vector<double> out;
  out.reserve(Ns.size());
  if (Ns.empty()) return out;
  const auto ps = table.primes_up_to(static_cast<std::uint64_t>(Ns.back()));
  CompensatedSum acc;
  std::size_t next = 0;
  for (std::int64_t N : Ns) {
    while (next < ps.size() && static_cast<std::int64_t>(ps[next]) <= N) {
      const auto p = static_cast<std::int64_t>(ps[next]);
      const double pd = static_cast<double>(p);
      switch (family) {
        case KernelFamily::avg: acc += std::log(pd) * f.at(x - p); break;
        case KernelFamily::avg_unweighted: acc += f.at(x - p); break;
        case KernelFamily::hilbert: acc += std::log(pd) / pd * (f.at(x - p) - f.at(x + p)); break;
      }
      ++next;
    }
    switch (family) {
      case KernelFamily::avg: out.push_back(acc.value() / static_cast<double>(N)); break;
      case KernelFamily::avg_unweighted: out.push_back(acc.value() / static_cast<double>(next)); break;
      case KernelFamily::hilbert: out.push_back(acc.value()); break;
    }
  }
  return out;
}

}  // namespace

std::vector<double> trajectory(const PrimeTable& table, KernelFamily family, const FiniteSignal& f,
                               std::span<const std::int64_t> Ns, std::int64_t x) {
  check_ladder(table, Ns);
  return trajectory_unchecked(table, family, f, Ns, x);
}

std::vector<std::vector<double>> trajectories(const PrimeTable& table, KernelFamily family,
                                              const FiniteSignal& f,
                                              std::span<const std::int64_t> Ns,
                                              std::span<const std::int64_t> xs) {
  check_ladder(table, Ns);
  std::vector<std::vector<double>> rows(xs.size());
  const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (std::int64_t i = 0; i < n; ++i)
    rows[static_cast<std::size_t>(i)] = trajectory_unchecked(table, family, f, Ns, xs[static_cast<std::size_t>(i)]);
  return rows;
}

double kernel_l1_difference(const PrimeTable& table, KernelFamily family, std::int64_t N) {
  if (N < 3) throw DomainError("kernel_l1_difference needs N >= 3");
  check_N(table, N);
  const auto un = static_cast<std::uint64_t>(N);
  const bool fresh = table.is_prime(un);
  const double n = static_cast<double>(N);
  switch (family) {
    case KernelFamily::avg: {
      // Old weights only rescale; a new prime adds one site.
      const double m = n - 1.0;
      double d = table.theta(un - 1) * (1.0 / m - 1.0 / n);
      if (fresh) d += std::log(n) / n;
      return d;
    }
    case KernelFamily::hilbert:
      return fresh ? 2.0 * std::log(n) / n : 0.0;
    case KernelFamily::avg_unweighted:
      // pi' (1/pi' - 1/(pi'+1)) + 1/(pi'+1) = 2/pi(N).
      return fresh ? 2.0 / static_cast<double>(table.prime_count(un)) : 0.0;
  }
  return 0.0;
}

std::complex<double> kernel_multiplier(const SparseKernel& k, double xi) {
  ComplexCompensatedSum s;
  for (const auto& e : k.entries) s += e.weight * phase(xi, e.site);
  return s.value();
}

void write_kernel_csv(std::ostream& os, const SparseKernel& k) {
  CsvWriter w(os);
  w.comment("label=" + std::string(to_string(k.family)) + ",N=" + std::to_string(k.N));
  w.row({"site", "weight"});
  for (const auto& e : k.entries) w.row({std::to_string(e.site), format_real(e.weight)});
}

namespace serial {

std::vector<double> trajectory_batch(const PrimeTable& table, KernelFamily family,
                                     const FiniteSignal& f, std::span<const std::int64_t> Ns,
                                     std::int64_t x) {
  check_ladder(table, Ns);
  std::vector<double> out;
  out.reserve(Ns.size());
  for (std::int64_t N : Ns) out.push_back(convolve(build_kernel(table, family, N), f).at(x));
  return out;
}

}  // namespace serial

}  // namespace pvlab
