// Acceptance checks: one PASS/FAIL line per criterion.
//   pvlab_acceptance            run all
//   pvlab_acceptance --only N   run criterion N; exit status 1 on FAIL

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pvlab/circle.hpp"
#include "pvlab/cutoff.hpp"
#include "pvlab/kernels.hpp"
#include "pvlab/numtheory.hpp"
#include "pvlab/phase.hpp"
#include "pvlab/variation.hpp"
#include "pvlab/weights.hpp"

using namespace pvlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string details;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const PrimeTable& million() {
  static const PrimeTable t(1000000);
  return t;
}

Outcome variation_oracle() {
  std::mt19937_64 rng(101);
  const double rs[] = {1.0, 1.5, 2.0, 2.5, 3.0, 5.0};
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t len = 1 + rng() % 12;
    std::vector<int> a(len);
    std::vector<double> ad(len);
    for (std::size_t i = 0; i < len; ++i) {
      a[i] = static_cast<int>(rng() % 5) - 2;
      ad[i] = a[i];
    }
    for (double r : rs) {
      const double dp = variation_exact(ad, r).value;
      const double ex = oracle::variation_exhaustive_small(a, r);
      worst = std::max(worst, std::abs(dp - ex));
    }
  }
  return {worst <= 1e-12, "max |DP - exhaustive| = " + fmt("%.3g", worst) + " over 1e4 sequences x 6 r"};
}

Outcome ramanujan() {
  double worst = 0.0;
  std::size_t count = 0;
  for (std::uint64_t q = 1; q <= 500; ++q) {
    const double mu = arith().mu(q);
    for (auto a : reduced_residues(q)) {
      worst = std::max(worst, std::abs(ramanujan_sum_check(q, static_cast<std::int64_t>(a)) - mu));
      ++count;
    }
  }
  return {worst <= 1e-9, "max |c_q(a) - mu(q)| = " + fmt("%.3g", worst) + " over " + std::to_string(count) + " pairs"};
}

Outcome moebius() {
  std::mt19937_64 rng(103);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int f = 0; f < 10; ++f) {
    // random trigonometric polynomial of degree <= 12 with a random constant
    std::vector<std::complex<double>> c(13);
    for (auto& v : c) v = {g(rng), g(rng)};
    const auto F = [&](const Rational& x) {
      std::complex<double> s = c[0];
      for (std::int64_t k = 1; k < 13; ++k) s += c[static_cast<std::size_t>(k)] * phase(x, k);
      return s;
    };
    for (std::uint64_t q = 1; q <= 200; ++q) {
      const auto s = moebius_inversion_check(F, q);
      const double scale = std::max(1.0, std::abs(s.left));
      worst = std::max(worst, std::abs(s.left - s.right) / scale);
    }
  }
  return {worst <= 1e-9, "max relative gap = " + fmt("%.3g", worst) + " over 10 functions, q <= 200"};
}

Outcome lemma21() {
  const Cutoff cutoff(2.0);
  double first = 0.0, second_ratio = 0.0;
  bool ok = true;
  for (int t = 1; t <= 5; ++t) {
    const auto J = lemma21_default_J(cutoff, t);
    for (double u : {0.5, 1.0, 2.0}) {
      const auto res = lemma21_check(cutoff, t, u, J);
      const double bound2 = std::abs(u) * std::pow(2.0, -t - 2);
      first = std::max(first, res.first);
      second_ratio = std::max(second_ratio, res.second / bound2);
      ok = ok && res.first <= 1.0 + 1e-3 && res.second <= bound2 + 1e-3;
    }
  }
  return {ok, "max sum|c_j| = " + fmt("%.6f", first) + " (bound 1), max second/bound = " + fmt("%.4f", second_ratio)};
}

Outcome kernel_difference() {
  const auto& t = million();
  std::int64_t violations = 0;
  double worst = 0.0;
  for (std::int64_t N = 3; N <= 100000; ++N) {
    const double d = kernel_l1_difference(t, KernelFamily::avg, N);
    const double b = 3.0 * std::log(double(N)) / double(N);
    worst = std::max(worst, d / b);
    if (d > b) ++violations;
  }
  return {violations == 0, "violations = " + std::to_string(violations) + ", max ratio to 3 log N/N = " + fmt("%.4f", worst)};
}

Outcome siegel_walfisz() {
  const auto& t = million();
  std::size_t failures = 0, count = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t q = 1; q <= 6; ++q) {
    const double phi = double(arith().phi(q));
    for (auto r : reduced_residues(q)) {
      const auto dev = [&](std::uint64_t x) {
        return std::abs(chebyshev_psi_progression(t, x, q, r) - double(x) / phi) / double(x);
      };
      const double lo = dev(100), hi = dev(1000000);
      worst_ratio = std::max(worst_ratio, hi / lo);
      if (!(hi < lo)) ++failures;
      ++count;
    }
  }
  return {failures == 0, std::to_string(count - failures) + "/" + std::to_string(count) +
                             " progressions decay, max dev(1e6)/dev(1e2) = " + fmt("%.4g", worst_ratio)};
}

Outcome major_arc() {
  const auto& t = million();
  constexpr double alpha = 1.0;
  std::size_t failures = 0, count = 0;
  double worst_lo = 0.0, worst_hi = 0.0;
  for (std::int64_t q = 1; q <= 6; ++q)
    for (auto a : reduced_residues(static_cast<std::uint64_t>(q))) {
      const auto ai = static_cast<std::int64_t>(a % static_cast<std::uint64_t>(q));
      const double lo = major_arc_error(t, KernelFamily::avg, 100, 0, alpha, ai, q).error;
      const double hi = major_arc_error(t, KernelFamily::avg, 1000000, 0, alpha, ai, q).error;
      worst_lo = std::max(worst_lo, lo);
      worst_hi = std::max(worst_hi, hi);
      if (!(hi < lo)) ++failures;
      ++count;
    }
  return {failures == 0, "alpha = 1, M = 0: " + std::to_string(count - failures) + "/" + std::to_string(count) +
                             " arcs decay, max error " + fmt("%.4g", worst_lo) + " -> " + fmt("%.4g", worst_hi)};
}

Outcome assembly() {
  const auto& t = million();
  const Cutoff cutoff(2.0);
  const auto lo = assembly_error(t, cutoff, KernelFamily::avg, 100, 6, 4096);
  const auto hi = assembly_error(t, cutoff, KernelFamily::avg, 100000, 6, 4096);
  const bool ok = std::isfinite(lo.error) && std::isfinite(hi.error) && hi.error < lo.error;
  return {ok, "sup error N=1e2: " + fmt("%.6g", lo.error) + ", N=1e5: " + fmt("%.6g", hi.error) +
                  " (t_max 6 truncated to " + std::to_string(hi.levels.effective) + ")"};
}

Outcome minor_arc() {
  const auto& t = million();
  const Rational gamma = parse_rational("0.6180339887");
  std::vector<double> vals;
  for (std::int64_t N : {1000, 10000, 100000}) {
    const double n = double(N), th = t.theta(static_cast<std::uint64_t>(N));
    const double F = std::abs(prime_exponential_sum(t, gamma, 0, N, KernelFamily::avg)) * n;
    vals.push_back(F * n / (th * th));
  }
  const bool decreasing = vals[1] < vals[0] && vals[2] < vals[1];
  std::mt19937_64 rng(109);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 4000000000ULL);
    const Rational xi(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den)), den);
    const std::int64_t Qcap = 1 + static_cast<std::int64_t>(rng() % 1000000);
    const auto d = dirichlet_approx(xi, Qcap);
    const __int128 lhs = static_cast<__int128>(xi.num) * d.q - static_cast<__int128>(d.a) * xi.den;
    if (d.q < 1 || d.q > Qcap || (lhs < 0 ? -lhs : lhs) * Qcap > static_cast<__int128>(xi.den)) ++bad;
  }
  return {decreasing && bad == 0, "normalized |F_N| = " + fmt("%.6g", vals[0]) + ", " + fmt("%.6g", vals[1]) + ", " +
                                      fmt("%.6g", vals[2]) + "; dirichlet violations = " + std::to_string(bad)};
}

Outcome weight_transfer() {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.05, 3.0);
  std::size_t violations = 0, identity_fail = 0;
  double worst_prefix = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    const double Lambda = 0.25 + double(rng() % 32) / 8;
    const auto lam = random_lambda(rng, rows, cols, Lambda);
    std::vector<double> a(rows);
    for (auto& v : a) v = u(rng);
    for (double r : {1.0, 2.0, 3.0}) {
      const auto c = lemma51_check(lam, a, r);
      if (c.lhs > c.rhs * (1 + 1e-12) + 1e-14) ++violations;
    }
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<double> w(n), rho(n), wp(n), a(n);
    for (auto& v : w) v = pos(rng);
    for (auto& v : rho) v = pos(rng);
    std::sort(rho.begin(), rho.end());
    if (trial % 2 == 0) std::reverse(rho.begin(), rho.end());
    for (std::size_t i = 0; i < n; ++i) wp[i] = w[i] * rho[i], a[i] = u(rng);
    const WeightScheme s(w, wp);
    for (double r : {1.0, 2.0, 3.0}) {
      const auto p = prop52_check(s, a, r);
      if (p.lhs > p.Cprime * p.rhs * (1 + 1e-12) + 1e-14) ++violations;
    }
    const auto b = build_lambda(s, *detect_case(s));
    for (std::size_t k = 1; k <= n; ++k) {
      double col = 0.0;
      for (std::size_t N = 1; N <= n; ++N) {
        col += b.lambda.at(N - 1, k - 1);
        const double gap = std::abs(sum1_prefix(s, N, k) - col);
        worst_prefix = std::max(worst_prefix, gap);
        if (gap > 1e-12) ++identity_fail;
      }
    }
  }
  return {violations == 0 && identity_fail == 0,
          "violations = " + std::to_string(violations) + ", max sum1 prefix gap = " + fmt("%.3g", worst_prefix)};
}

Outcome split() {
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto part = BlockPartition::for_length(0.5, 64);
  double worst = 0.0;
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(64);
    for (auto& v : a) v = u(rng);
    for (double r : {2.1, 3.0}) {
      const auto sp = long_short_split(a, r, part);
      const double v = variation_exact(a, r).value;
      worst = std::max(worst, v / (sp.long_part + sp.short_part));
      if (v > 3.0 * (sp.long_part + sp.short_part)) ++violations;
    }
  }
  return {violations == 0, "max V_r / (V_long + V_short) = " + fmt("%.4f", worst)};
}

Outcome normalization() {
  const auto& t = million();
  std::vector<double> dev;
  std::string s;
  for (std::uint64_t N : {100, 1000, 10000, 100000, 1000000}) {
    dev.push_back(std::abs(t.theta(N) / double(N) - 1.0));
    s += (s.empty() ? "" : ", ") + fmt("%.4g", dev.back());
  }
  bool ok = dev.back() < 0.01;
  for (std::size_t i = 1; i < dev.size(); ++i) ok = ok && dev[i] < dev[i - 1];
  return {ok, "|theta(N)/N - 1| = " + s};
}

Outcome blowup() {
  const auto& t = million();
  std::vector<std::int64_t> Ns;
  for (std::int64_t N = 2; N <= 10000; ++N) Ns.push_back(N);
  bool ok = true;
  std::string s;
  for (std::int64_t x : {0, 2}) {
    const auto traj = trajectory(t, KernelFamily::avg, FiniteSignal::delta(0), Ns, x);
    double prev = INFINITY;
    s += (s.empty() ? "x=" : "; x=") + std::to_string(x) + ":";
    for (double r : {2.1, 2.5, 3.0, 4.0}) {
      const double v = variation_exact(traj, r).value;
      ok = ok && v <= prev;
      prev = v;
      s += " " + fmt("%.4g", v);
    }
  }
  return {ok, "V_r over r = 2.1, 2.5, 3, 4 at " + s};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"variation DP vs exhaustive", variation_oracle},
      {"Ramanujan sums", ramanujan},
      {"Moebius inversion", moebius},
      {"cutoff coefficient norms", lemma21},
      {"kernel difference bound", kernel_difference},
      {"progression decay", siegel_walfisz},
      {"major-arc decay", major_arc},
      {"assembly error decay", assembly},
      {"minor-arc decay and Dirichlet bound", minor_arc},
      {"weight transfer", weight_transfer},
      {"long/short split", split},
      {"prime normalization", normalization},
      {"variation monotone in r", blowup},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "criterion out of range: %d\n", only);
    return 2;
  }
  bool all_pass = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%zu] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.details.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
