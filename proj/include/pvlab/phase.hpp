#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "pvlab/rational.hpp"

namespace pvlab {

// e^{2 pi i t} with octant reduction: exact at multiples of 1/8 turn and
// odd in t bit-for-bit, so conjugate symmetry survives rounding.
inline std::complex<double> cis_turns(double t) {
  t -= std::nearbyint(t);  // t in [-1/2, 1/2]
  const bool neg = std::signbit(t);
  double u = std::abs(t) * 8.0;  // octants, u in [0, 4]
  const double k = std::nearbyint(u);
  const double f = (u - k) * (std::numbers::pi / 4.0);  // |f| <= pi/8
  const double c = std::cos(f), s = std::sin(f);
  constexpr double h = std::numbers::sqrt2 / 2.0;
  double re = 0.0, im = 0.0;
  switch (static_cast<int>(k)) {
    case 0: re = c; im = s; break;
    case 1: re = h * (c - s); im = h * (c + s); break;
    case 2: re = -s; im = c; break;
    case 3: re = -h * (c + s); im = h * (c - s); break;
    default: re = -c; im = -s; break;
  }
  return {re, neg ? -im : im};
}

// e^{2 pi i xi n} with the product reduced exactly modulo 1.
inline std::complex<double> phase(const Rational& xi, std::int64_t n) {
  const std::int64_t r = centered_residue(xi, n);
  return cis_turns(static_cast<double>(r) / static_cast<double>(xi.den));
}

inline std::complex<double> phase(double xi, std::int64_t n) {
  const long double prod = static_cast<long double>(xi) * static_cast<long double>(n);
  return cis_turns(static_cast<double>(prod - std::nearbyint(prod)));
}

}  // namespace pvlab
