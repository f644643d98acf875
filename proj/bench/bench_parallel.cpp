// Serial reference vs OpenMP timings for the hot kernels.
//   pvlab_bench [n_max] [grid_Q] [dp_length]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>

#include "pvlab/circle.hpp"
#include "pvlab/kernels.hpp"
#include "pvlab/numtheory.hpp"
#include "pvlab/parallel.hpp"
#include "pvlab/variation.hpp"

using namespace pvlab;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* what, double serial, double parallel, int threads, bool same) {
  std::printf("%-28s serial %9.4f s   omp(%2d) %9.4f s   speedup %5.2fx   %s\n", what, serial, threads,
              parallel, serial / parallel, same ? "identical" : "DIFFERS");
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t n_max = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1'000'000;
  const std::int64_t Q = argc > 2 ? std::strtoll(argv[2], nullptr, 10) : 1024;
  const std::size_t J = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 6000;
  const int threads = worker_count();
  std::printf("n_max=%llu Q=%lld dp_length=%zu threads=%d\n", static_cast<unsigned long long>(n_max),
              static_cast<long long>(Q), J, threads);

  std::optional<PrimeTable> table;
  const double t_sieve = seconds([&] { table.emplace(n_max); });
  std::printf("%-28s %9.4f s (%zu primes)\n", "sieve", t_sieve, table->primes().size());
  const auto N = static_cast<std::int64_t>(n_max);

  {
    const Rational xi(6180339887, 10000000000);
    std::complex<double> a, b;
    const double ts = seconds([&] {
      for (int i = 0; i < 20; ++i) a = serial::prime_exponential_sum(*table, xi, 0, N, KernelFamily::avg);
    });
    const double tp = seconds([&] {
      for (int i = 0; i < 20; ++i) b = prime_exponential_sum(*table, xi, 0, N, KernelFamily::avg);
    });
    report("prime_exponential_sum x20", ts, tp, threads, std::abs(a - b) < 1e-12);
  }
  {
    const std::int64_t Nq = std::min<std::int64_t>(N, 100000);
    MultiplierGrid a, b;
    const double ts = seconds([&] { a = serial::exponential_sum_grid(*table, KernelFamily::avg, 0, Nq, Q); });
    const double tp = seconds([&] { b = exponential_sum_grid(*table, KernelFamily::avg, 0, Nq, Q); });
    double gap = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) gap = std::max(gap, std::abs(a.values[j] - b.values[j]));
    report("exponential_sum_grid", ts, tp, threads, gap < 1e-12);
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> seq(J);
    for (auto& v : seq) v = u(rng);
    VariationResult a, b;
    const double ts = seconds([&] { a = serial::variation_dp(seq, 2.5); });
    const double tp = seconds([&] { b = variation_exact(seq, 2.5); });
    report("variation DP", ts, tp, threads, a.value == b.value && a.path == b.path);
  }
  {
    const std::int64_t top = std::min<std::int64_t>(N, 20000);
    std::vector<std::int64_t> Ns;
    for (std::int64_t n = 2; n <= top; ++n) Ns.push_back(n);
    std::vector<std::int64_t> xs;
    for (std::int64_t x = 0; x < 64; ++x) xs.push_back(x);
    const auto f = FiniteSignal::delta(0);
    std::vector<std::vector<double>> a(xs.size()), b;
    const double ts = seconds([&] {
      for (std::size_t i = 0; i < xs.size(); ++i) a[i] = trajectory(*table, KernelFamily::hilbert, f, Ns, xs[i]);
    });
    const double tp = seconds([&] { b = trajectories(*table, KernelFamily::hilbert, f, Ns, xs); });
    report("trajectories (64 sites)", ts, tp, threads, a == b);
  }
  return 0;
}
