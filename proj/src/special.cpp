#include "pvlab/special.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "pvlab/errors.hpp"

namespace pvlab {

namespace {

constexpr double kSeriesLimit = 4.0;

// Both integrals from one series pass, x in (0, 4].
void series(double x, double& si, double& ci) {
  const double x2 = x * x;
  // Si: sum (-1)^k x^{2k+1} / ((2k+1) (2k+1)!)
  double term = x, s = x;
  for (int k = 1; k < 40; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double add = term / (2.0 * k + 1.0);
    s += add;
    if (std::abs(add) < 1e-18 * std::abs(s)) break;
  }
  si = s;
  // Ci - gamma - log x: sum (-1)^k x^{2k} / (2k (2k)!)
  double t2 = 1.0, c = 0.0;
  for (int k = 1; k < 40; ++k) {
    t2 *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
    const double add = t2 / (2.0 * k);
    c += add;
    if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(c))) break;
  }
  ci = std::numbers::egamma + std::log(x) + c;
}

// E1(ix) by the continued fraction (modified Lentz); x > 2.
void continued_fraction(double x, double& si, double& ci) {
  using cd = std::complex<double>;
  constexpr double tiny = 1e-300;
  cd b(1.0, x);
  cd c(1.0 / tiny, 0.0);
  cd d = 1.0 / b;
  cd h = d;
  for (int i = 2; i < 100000; ++i) {
    const double a = -static_cast<double>(i - 1) * static_cast<double>(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cd del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
  }
  h *= cd(std::cos(x), -std::sin(x));
  ci = -h.real();
  si = std::numbers::pi / 2.0 + h.imag();
}

}  // namespace

double sine_integral(double x) {
  if (std::isnan(x)) return x;
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  if (std::isinf(ax)) return std::copysign(std::numbers::pi / 2.0, x);
  double si = 0.0, ci = 0.0;
  if (ax <= kSeriesLimit)
    series(ax, si, ci);
  else
    continued_fraction(ax, si, ci);
  return std::copysign(si, x);
}

double cosine_integral(double x) {
  if (!(x > 0.0)) throw DomainError("cosine integral requires x > 0");
  if (std::isinf(x)) return 0.0;
  double si = 0.0, ci = 0.0;
  if (x <= kSeriesLimit)
    series(x, si, ci);
  else
    continued_fraction(x, si, ci);
  return ci;
}

}  // namespace pvlab
