#include "pvlab/circle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "pvlab/csv.hpp"
#include "pvlab/errors.hpp"
#include "pvlab/parallel.hpp"
#include "pvlab/phase.hpp"
#include "pvlab/special.hpp"
#include "pvlab/summation.hpp"

namespace pvlab {

namespace {

constexpr std::size_t kPrimeBlock = 4096;

// e^{i pi y} sin(pi y) / (pi y), i.e. int_0^1 e(y s) ds.
std::complex<double> unit_average(long double y) {
  if (y == 0.0L) return {1.0, 0.0};
  const auto half = static_cast<double>(y / 2.0L - std::nearbyint(y / 2.0L));
  const auto e = cis_turns(half);
  return e * (e.imag() / (std::numbers::pi * static_cast<double>(y)));
}

void check_window(const PrimeTable& table, std::int64_t M, std::int64_t N) {
  if (N < 2) throw DomainError("prime sums need N >= 2");
  if (M < 0 || M > N) throw DomainError("prime sums need 0 <= M <= N");
  if (static_cast<std::uint64_t>(N) > table.n_max())
    throw RangeError("N = " + std::to_string(N) + " exceeds the sieve limit " +
                     std::to_string(table.n_max()));
}

std::span<const std::uint64_t> window_primes(const PrimeTable& table, std::int64_t M,
                                             std::int64_t N) {
  const auto upto = table.primes_up_to(static_cast<std::uint64_t>(N));
  const auto skip = M >= 2 ? table.prime_count(static_cast<std::uint64_t>(M)) : std::size_t{0};
  return upto.subspan(skip);
}

struct WeightFn {
  KernelFamily family;
  double scale;  // 1/N or 1/pi(N); unused for hilbert

  std::complex<double> operator()(std::uint64_t p, std::complex<double> e) const {
    const double pd = static_cast<double>(p);
    switch (family) {
      case KernelFamily::avg: return e * (std::log(pd) * scale);
      case KernelFamily::avg_unweighted: return e * scale;
      case KernelFamily::hilbert: return {0.0, 2.0 * std::log(pd) / pd * e.imag()};
    }
    return {};
  }
};

WeightFn weight_fn(const PrimeTable& table, KernelFamily family, std::int64_t N) {
  double scale = 1.0 / static_cast<double>(N);
  if (family == KernelFamily::avg_unweighted)
    scale = 1.0 / static_cast<double>(table.prime_count(static_cast<std::uint64_t>(N)));
  return {family, scale};
}

template <typename PhaseFn>
std::complex<double> blocked_sum(std::span<const std::uint64_t> ps, const WeightFn& wf,
                                 PhaseFn&& ph) {
  const std::size_t blocks = (ps.size() + kPrimeBlock - 1) / kPrimeBlock;
  std::vector<std::complex<double>> partial(blocks);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kPrimeBlock;
    const std::size_t hi = std::min(ps.size(), lo + kPrimeBlock);
    ComplexCompensatedSum s;
    for (std::size_t i = lo; i < hi; ++i) s += wf(ps[i], ph(ps[i]));
    partial[static_cast<std::size_t>(b)] = s.value();
  }
  return pairwise_reduce<std::complex<double>>(partial);
}

// Sum at a/q + offset, keeping the rational part exact.
std::complex<double> shifted_sum(const PrimeTable& table, const Rational& center, double offset,
                                 std::int64_t M, std::int64_t N, KernelFamily family) {
  check_window(table, M, N);
  return blocked_sum(window_primes(table, M, N), weight_fn(table, family, N),
                     [&](std::uint64_t p) {
                       const auto n = static_cast<std::int64_t>(p);
                       return phase(center, n) * phase(offset, n);
                     });
}

bool power_of_two(std::int64_t Q) { return Q > 0 && std::has_single_bit(static_cast<std::uint64_t>(Q)); }

constexpr std::int64_t kMaxGrid = std::int64_t{1} << 26;

// cis(c/Q) for residues r in [0, Q), c the centered representative of r.
std::vector<std::complex<double>> root_table(std::int64_t Q) {
  std::vector<std::complex<double>> tbl(static_cast<std::size_t>(Q));
  for (std::int64_t r = 0; r < Q; ++r) {
    const std::int64_t c = 2 * r > Q ? r - Q : r;
    tbl[static_cast<std::size_t>(r)] = cis_turns(static_cast<double>(c) / static_cast<double>(Q));
  }
  return tbl;
}

MultiplierGrid grid_shell(KernelFamily family, std::int64_t M, std::int64_t N, std::int64_t Q) {
  if (Q < 1 || Q > kMaxGrid) throw DomainError("grid size Q must be in [1, 2^26]");
  MultiplierGrid g;
  g.label = "m_N";
  g.family = family;
  g.N = N;
  g.M = M;
  g.Q = Q;
  g.values.assign(static_cast<std::size_t>(Q), {});
  return g;
}

std::complex<double> grid_cell(std::span<const std::uint64_t> ps, const WeightFn& wf,
                               const std::vector<std::complex<double>>& tbl, std::int64_t j,
                               std::int64_t Q) {
  const auto uQ = static_cast<std::uint64_t>(Q);
  const auto uj = static_cast<std::uint64_t>(j);
  ComplexCompensatedSum s;
  for (auto p : ps) s += wf(p, tbl[(p % uQ) * uj % uQ]);
  return s.value();
}

}  // namespace

std::complex<double> model_phi(const ModelMultiplier& m, double xi) {
  if (m.N < 1 || m.M < 0 || m.M > m.N) throw DomainError("model multiplier needs 0 <= M <= N, N >= 1");
  const long double x = xi;
  const long double N = static_cast<long double>(m.N), M = static_cast<long double>(m.M);
  if (m.family == KernelFamily::hilbert) {
    const double tn = static_cast<double>(2.0L * std::numbers::pi_v<long double> * N * x);
    if (m.M == 0) return {0.0, 2.0 * sine_integral(tn)};
    const double tm = static_cast<double>(2.0L * std::numbers::pi_v<long double> * M * x);
    return {0.0, 2.0 * (sine_integral(tn) - sine_integral(tm))};
  }
  if (m.M == 0) return unit_average(x * N);
  // (1/N) int_M^N e(xi s) ds = ((N - M)/N) e(xi M) int_0^1 e(xi (N - M) s) ds
  const auto shift = static_cast<double>(x * M - std::nearbyint(x * M));
  return cis_turns(shift) * unit_average(x * (N - M)) * static_cast<double>((N - M) / N);
}

std::complex<double> prime_exponential_sum(const PrimeTable& table, const Rational& xi,
                                           std::int64_t M, std::int64_t N, KernelFamily family) {
  check_window(table, M, N);
  return blocked_sum(window_primes(table, M, N), weight_fn(table, family, N),
                     [&](std::uint64_t p) { return phase(xi, static_cast<std::int64_t>(p)); });
}

std::complex<double> prime_exponential_sum(const PrimeTable& table, double xi, std::int64_t M,
                                           std::int64_t N, KernelFamily family) {
  check_window(table, M, N);
  return blocked_sum(window_primes(table, M, N), weight_fn(table, family, N),
                     [&](std::uint64_t p) { return phase(xi, static_cast<std::int64_t>(p)); });
}

MultiplierGrid exponential_sum_grid(const PrimeTable& table, KernelFamily family, std::int64_t M,
                                    std::int64_t N, std::int64_t Q) {
  check_window(table, M, N);
  MultiplierGrid g = grid_shell(family, M, N, Q);
  const auto ps = window_primes(table, M, N);
  const auto wf = weight_fn(table, family, N);
  const auto tbl = root_table(Q);
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
  for (std::int64_t j = 0; j < Q; ++j) g.values[static_cast<std::size_t>(j)] = grid_cell(ps, wf, tbl, j, Q);
  return g;
}

void write_grid_csv(std::ostream& os, const MultiplierGrid& g) {
  CsvWriter w(os);
  w.comment("label=" + g.label + ",family=" + std::string(to_string(g.family)) +
            ",N=" + std::to_string(g.N) + ",M=" + std::to_string(g.M) + ",D=" + format_real(g.D) +
            ",alpha=" + format_real(g.alpha) + ",t_max=" + std::to_string(g.t_max) +
            ",Q=" + std::to_string(g.Q));
  w.row({"j", "xi_num", "xi_den", "re", "im"});
  for (std::int64_t j = 0; j < g.Q; ++j) {
    const Rational xi(j, g.Q);
    const auto v = g.values[static_cast<std::size_t>(j)];
    w.row({std::to_string(j), std::to_string(xi.num), std::to_string(xi.den), format_real(v.real()),
           format_real(v.imag())});
  }
}

DirichletApprox dirichlet_approx(const Rational& xi_in, std::int64_t Qcap) {
  if (Qcap < 1 || Qcap > (std::int64_t{1} << 31)) throw DomainError("Qcap must be in [1, 2^31]");
  if (xi_in.num < 0 || xi_in.num >= xi_in.den) throw DomainError("xi must lie in [0, 1)");
  const Rational xi = xi_in;
  // Convergents h/k of the continued fraction of num/den.
  __int128 h_prev = 1, h = 0, k_prev = 0, k = 1;
  __int128 n = xi.num, d = xi.den;
  // First partial quotient is 0 since xi < 1.
  std::swap(n, d);  // now continuing with den/num
  while (d != 0) {
    const __int128 a = n / d;
    const __int128 rem = n - a * d;
    const __int128 k_next = a * k + k_prev;
    if (k_next > Qcap) break;
    const __int128 h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    n = d;
    d = rem;
  }
  DirichletApprox out{static_cast<std::int64_t>(h), static_cast<std::int64_t>(k), 0.0};
  const __int128 diff = static_cast<__int128>(xi.num) * k - h * static_cast<__int128>(xi.den);
  const __int128 adiff = diff < 0 ? -diff : diff;
  if (adiff * Qcap > static_cast<__int128>(xi.den))
    throw std::logic_error("dirichlet_approx: |xi - a/q| <= 1/(q Qcap) violated");
  out.remainder = static_cast<double>(static_cast<long double>(diff) /
                                      (static_cast<long double>(xi.den) * static_cast<long double>(k)));
  return out;
}

DirichletApprox dirichlet_approx(double xi, std::int64_t Qcap) {
  return dirichlet_approx(rational_from_double(xi), Qcap);
}

double vinogradov_bound(double N, double q) {
  if (N < 2.0 || q < 2.0) throw DomainError("vinogradov_bound needs N, q >= 2");
  const double l = std::log(N);
  return l * l * l * l * (N / std::sqrt(q) + std::pow(N, 0.8) + std::sqrt(N * q));
}

TruncationLevels nu_truncation(const Cutoff& cutoff, std::int64_t N, int t_max, std::int64_t Q) {
  if (t_max < 0) throw DomainError("t_max must be >= 0");
  if (N < 1) throw DomainError("N must be >= 1");
  TruncationLevels lv;
  lv.requested = t_max;
  const auto covered = [&](int t) { return 2.0 * cutoff.support_radius(t) * static_cast<double>(Q) >= 4.0; };
  if (!covered(0))
    throw ResolutionError("eta_0 support spans fewer than 4 grid cells at Q = " + std::to_string(Q));
  lv.resolved = 0;
  while (lv.resolved < 62 && covered(lv.resolved + 1)) ++lv.resolved;
  lv.log_N = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(N))) - 1;
  lv.effective = std::min({lv.requested, lv.resolved, lv.log_N});
  return lv;
}

MultiplierGrid build_nu(const Cutoff& cutoff, KernelFamily family, std::int64_t N, int t_max,
                        std::int64_t Q) {
  if (!power_of_two(Q) || Q > kMaxGrid) throw DomainError("grid size Q must be a power of two <= 2^26");
  const auto lv = nu_truncation(cutoff, N, t_max, Q);
  MultiplierGrid g = grid_shell(family, 0, N, Q);
  g.label = "nu";
  g.D = cutoff.D();
  g.t_max = lv.effective;
  g.overlaps.assign(static_cast<std::size_t>(lv.effective) + 1, 0);
  const ModelMultiplier model{family, N, 0};
  const auto& af = arith();
  std::vector<std::uint8_t> hits(static_cast<std::size_t>(Q));
  for (int t = 0; t <= lv.effective; ++t) {
    std::fill(hits.begin(), hits.end(), 0);
    const long double R = cutoff.support_radius(t);
    for (const auto& fp : farey_level(t)) {
      const int mu = af.mu(static_cast<std::uint64_t>(fp.q));
      if (mu == 0) continue;
      const double coef = mu / static_cast<double>(af.phi(static_cast<std::uint64_t>(fp.q)));
      const long double c = static_cast<long double>(fp.a) / fp.q;
      const auto j_lo = static_cast<std::int64_t>(std::ceil((c - R) * Q));
      const auto j_hi = static_cast<std::int64_t>(std::floor((c + R) * Q));
      for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        // j/Q - a/q exactly, then rounded once.
        const __int128 num = static_cast<__int128>(j) * fp.q - static_cast<__int128>(fp.a) * Q;
        const double d = static_cast<double>(static_cast<long double>(num) /
                                             (static_cast<long double>(fp.q) * Q));
        const double e = cutoff.eta_t(t, d);
        if (e == 0.0) continue;
        const auto jm = static_cast<std::size_t>(((j % Q) + Q) % Q);
        if (hits[jm]++ == 1) ++g.overlaps[static_cast<std::size_t>(t)];
        g.values[jm] += coef * e * model_phi(model, d);
      }
    }
  }
  return g;
}

ArcError major_arc_error(const PrimeTable& table, KernelFamily family, std::int64_t N,
                         std::int64_t M, double alpha, std::int64_t a, std::int64_t q) {
  if (q < 1 || std::gcd(a, q) != 1) throw PreconditionError("arc center must be a reduced fraction a/q");
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  check_window(table, M, N);
  ArcError out;
  const double logN = std::log(static_cast<double>(N));
  out.halfwidth = std::pow(logN, alpha) / static_cast<double>(N);
  out.asymptotic_regime = static_cast<double>(M) >= static_cast<double>(N) * std::pow(logN, -alpha / 4.0);
  const Rational center = torus(Rational(a, q));
  const auto& af = arith();
  const double coef = af.mu(static_cast<std::uint64_t>(q)) / static_cast<double>(af.phi(static_cast<std::uint64_t>(q)));
  const ModelMultiplier model{family, N, M};
  for (int s = 0; s <= 10; ++s) {
    const double offset = out.halfwidth * (s - 5) / 5.0;
    const auto S = shifted_sum(table, center, offset, M, N, family);
    out.error = std::max(out.error, std::abs(S - coef * model_phi(model, offset)));
  }
  return out;
}

AssemblyError assembly_error(const PrimeTable& table, const Cutoff& cutoff, KernelFamily family,
                             std::int64_t N, int t_max, std::int64_t Q) {
  const auto nu = build_nu(cutoff, family, N, t_max, Q);
  const auto m = exponential_sum_grid(table, family, 0, N, Q);
  AssemblyError out;
  out.levels = nu_truncation(cutoff, N, t_max, Q);
  out.overlaps = nu.overlaps;
  for (std::int64_t j = 0; j < Q; ++j) {
    const double e = std::abs(m.values[static_cast<std::size_t>(j)] - nu.values[static_cast<std::size_t>(j)]);
    if (e > out.error) {
      out.error = e;
      out.argmax = j;
    }
  }
  return out;
}

SumVsIntegral sum_vs_integral(KernelFamily family, double theta, std::int64_t M, std::int64_t N) {
  if (N < 1 || M < 0 || M > N) throw DomainError("window needs 0 <= M <= N, N >= 1");
  ComplexCompensatedSum s;
  for (std::int64_t n = M + 1; n <= N; ++n) {
    const auto e = phase(theta, n);
    if (family == KernelFamily::hilbert)
      s += std::complex<double>(0.0, 2.0 * e.imag() / static_cast<double>(n));
    else
      s += e / static_cast<double>(N);
  }
  return {s.value(), model_phi({family, N, M}, theta)};
}

namespace serial {

std::complex<double> prime_exponential_sum(const PrimeTable& table, const Rational& xi,
                                           std::int64_t M, std::int64_t N, KernelFamily family) {
  check_window(table, M, N);
  const auto wf = weight_fn(table, family, N);
  ComplexCompensatedSum s;
  for (auto p : window_primes(table, M, N)) s += wf(p, phase(xi, static_cast<std::int64_t>(p)));
  return s.value();
}

MultiplierGrid exponential_sum_grid(const PrimeTable& table, KernelFamily family, std::int64_t M,
                                    std::int64_t N, std::int64_t Q) {
  check_window(table, M, N);
  MultiplierGrid g = grid_shell(family, M, N, Q);
  const auto ps = window_primes(table, M, N);
  const auto wf = weight_fn(table, family, N);
  for (std::int64_t j = 0; j < Q; ++j) {
    const Rational xi(j, Q);
    ComplexCompensatedSum s;
    for (auto p : ps) s += wf(p, phase(xi, static_cast<std::int64_t>(p)));
    g.values[static_cast<std::size_t>(j)] = s.value();
  }
  return g;
}

}  // namespace serial

}  // namespace pvlab
