#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pvlab/cutoff.hpp"
#include "pvlab/kernels.hpp"
#include "pvlab/numtheory.hpp"
#include "pvlab/rational.hpp"

namespace pvlab {

/// Continuous model of a prime kernel multiplier.
///   avg (and avg_unweighted): Phi_N(xi)     = int_0^1 e(xi N s) ds
///   hilbert:                  Phi_N(xi)     = int_{-1}^{1} e(N xi s) ds / s = 2i Si(2 pi N xi)
///   M > 0 gives the window Phi_{M,N}(xi)    = int_M^N e(xi x) K(x) dx
///   with K = 1/N (avg) or K = 1/x on both signs (hilbert).
struct ModelMultiplier {
  KernelFamily family = KernelFamily::avg;
  std::int64_t N = 1;
  std::int64_t M = 0;
};

std::complex<double> model_phi(const ModelMultiplier& m, double xi);

/// sum over primes M < p <= N of e(xi p) K(p) log p, i.e. the multiplier of the
/// (windowed) kernel:
///   avg:            log p / N
///   avg_unweighted: 1 / pi(N)
///   hilbert:        (log p / p) (e(xi p) - e(-xi p))
/// Primes are split into fixed blocks summed in parallel and merged by a fixed
/// pairwise tree, so the result does not depend on the thread count.
/// Requires 0 <= M <= N <= n_max, N >= 2.
std::complex<double> prime_exponential_sum(const PrimeTable& table, const Rational& xi,
                                           std::int64_t M, std::int64_t N, KernelFamily family);
std::complex<double> prime_exponential_sum(const PrimeTable& table, double xi, std::int64_t M,
                                           std::int64_t N, KernelFamily family);

/// Samples of a torus multiplier at xi_j = j / Q.
struct MultiplierGrid {
  std::string label;  // m_N, nu, error, ...
  KernelFamily family = KernelFamily::avg;
  std::int64_t N = 0;
  std::int64_t M = 0;
  double D = 0.0;      // 0 when no cutoff is involved
  double alpha = 0.0;  // 0 when not applicable
  int t_max = -1;      // effective truncation level; -1 when not applicable
  std::int64_t Q = 0;
  std::vector<std::complex<double>> values;
  // build_nu only: per level, grid points reached by more than one Farey bump.
  std::vector<std::size_t> overlaps;
};

// m_N(j/Q) for all j (exact rational phases), parallel over j.
MultiplierGrid exponential_sum_grid(const PrimeTable& table, KernelFamily family, std::int64_t M,
                                    std::int64_t N, std::int64_t Q);

// CSV: one "# family=..,N=..,..." line, then j,xi_num,xi_den,re,im.
void write_grid_csv(std::ostream& os, const MultiplierGrid& g);

struct DirichletApprox {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double remainder = 0.0;  // xi - a/q
};

/// Last continued-fraction convergent a/q of xi with q <= Qcap; then
/// |xi - a/q| <= 1/(q Qcap). The bound is re-checked in integer arithmetic.
/// Requires xi in [0, 1) and 1 <= Qcap <= 2^31.
DirichletApprox dirichlet_approx(const Rational& xi, std::int64_t Qcap);
DirichletApprox dirichlet_approx(double xi, std::int64_t Qcap);

// (log N)^4 (N q^{-1/2} + N^{4/5} + N^{1/2} q^{1/2}), no implied constant.
double vinogradov_bound(double N, double q);

struct TruncationLevels {
  int requested = 0;
  int resolved = 0;  // largest t whose eta_t support spans >= 4 grid cells
  int log_N = 0;     // floor(log2 N)
  int effective = 0;
};

// ResolutionError if even t = 0 is unresolved on the grid.
TruncationLevels nu_truncation(const Cutoff& cutoff, std::int64_t N, int t_max, std::int64_t Q);

/// sum_{t <= t_eff} sum_{a/q in R_t} (mu(q)/phi(q)) Phi_N(xi - a/q) eta_t(xi - a/q)
/// on xi_j = j/Q, Q a power of two. Torus differences are exact rationals.
MultiplierGrid build_nu(const Cutoff& cutoff, KernelFamily family, std::int64_t N, int t_max,
                        std::int64_t Q);

struct ArcError {
  double error = 0.0;         // sampled sup over 11 points of the arc
  double halfwidth = 0.0;     // (log N)^alpha / N
  bool asymptotic_regime = false;  // M >= N (log N)^{-alpha/4}
};

/// sup over the arc around a/q of |S(xi) - (mu(q)/phi(q)) Phi_{M,N}(xi - a/q)|,
/// S the windowed prime sum; 11 equispaced samples including the center.
ArcError major_arc_error(const PrimeTable& table, KernelFamily family, std::int64_t N,
                         std::int64_t M, double alpha, std::int64_t a, std::int64_t q);

struct AssemblyError {
  double error = 0.0;  // max_j |m_N(j/Q) - nu(j/Q)|
  std::int64_t argmax = 0;
  TruncationLevels levels;
  std::vector<std::size_t> overlaps;
};

AssemblyError assembly_error(const PrimeTable& table, const Cutoff& cutoff, KernelFamily family,
                             std::int64_t N, int t_max, std::int64_t Q);

struct SumVsIntegral {
  std::complex<double> sum;       // sum_{M < n <= N} e(theta n) K(n)
  std::complex<double> integral;  // Phi_{M,N}(theta)
};

// Integer-lattice version of the window, for the sum-to-integral step.
SumVsIntegral sum_vs_integral(KernelFamily family, double theta, std::int64_t M, std::int64_t N);

namespace serial {

std::complex<double> prime_exponential_sum(const PrimeTable& table, const Rational& xi,
                                           std::int64_t M, std::int64_t N, KernelFamily family);
MultiplierGrid exponential_sum_grid(const PrimeTable& table, KernelFamily family, std::int64_t M,
                                    std::int64_t N, std::int64_t Q);

}  // namespace serial

}  // namespace pvlab
