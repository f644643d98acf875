#include "pvlab/arcs.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "pvlab/errors.hpp"

namespace pvlab {

ArcDecomposition::ArcDecomposition(std::int64_t N_, double alpha_) : N(N_), alpha(alpha_) {
  if (N < 3) throw DomainError("arc decomposition needs N >= 3");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a finite value > 0");
}

long double ArcDecomposition::log_power() const {
  return std::pow(std::log(static_cast<long double>(N)), static_cast<long double>(alpha));
}

long double ArcDecomposition::halfwidth() const { return log_power() / static_cast<long double>(N); }

std::int64_t ArcDecomposition::q_max() const {
  const long double lp = log_power();
  if (lp >= 9.2e18L) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(std::floor(lp));
}

std::vector<FareyPoint> ArcDecomposition::centers(std::int64_t q_limit) const {
  std::vector<FareyPoint> out;
  const std::int64_t qm = std::min(q_max(), q_limit);
  if (qm >= 1) out.push_back({0, 1, 0});
  for (std::int64_t q = 2; q <= qm; ++q)
    for (std::int64_t a = 1; a < q; ++a)
      if (std::gcd(a, q) == 1) out.push_back(make_farey_point(a, q));
  return out;
}

ArcClass arc_classify(const ArcDecomposition& arcs, const Rational& xi_in) {
  const Rational xi = torus(xi_in);
  const long double lp = arcs.log_power();
  const long double N = static_cast<long double>(arcs.N);
  // xi = b/d itself has denominator d, so a witness with q > d is never the smallest.
  const std::int64_t q_top = std::min(arcs.q_max(), xi.den);
  for (std::int64_t q = 1; q <= q_top; ++q) {
    const __int128 scaled = static_cast<__int128>(xi.num) * q;  // xi q = scaled / den
    const __int128 a_lo = scaled / xi.den;
    // Nearest of floor / ceil, ties to the smaller numerator.
    const __int128 d_lo = scaled - a_lo * xi.den;
    const __int128 d_hi = (a_lo + 1) * xi.den - scaled;
    const __int128 a = d_hi < d_lo ? a_lo + 1 : a_lo;
    const __int128 gap = d_hi < d_lo ? d_hi : d_lo;  // |num q - a den|
    // |xi - a/q| <= (log N)^alpha / N  <=>  gap N <= den q (log N)^alpha
    if (static_cast<long double>(gap) * N >
        static_cast<long double>(xi.den) * static_cast<long double>(q) * lp)
      continue;
    const auto a64 = static_cast<std::int64_t>(a % q);
    if (std::gcd(a64, q) != 1 && q != 1) continue;
    return {true, make_farey_point(a64, q)};
  }
  return {false, {}};
}

}  // namespace pvlab
