#include "pvlab/cutoff.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "pvlab/errors.hpp"
#include "pvlab/parallel.hpp"
#include "pvlab/quadrature.hpp"
#include "pvlab/summation.hpp"

namespace pvlab {

namespace {

constexpr double kBumpHalfWidth = 0.125;
constexpr double kPlateau = 0.375;

double bump(double x) {
  const double s = 8.0 * x;
  const double d = 1.0 - s * s;
  return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}

const GaussRule& rule96() {
  static const GaussRule r = gauss_legendre(96);
  return r;
}

// int_{-1/8}^{b} bump, b in [-1/8, 0].
double bump_integral_left(double b) {
  const auto& r = rule96();
  const double a = -kBumpHalfWidth;
  const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
  CompensatedSum s;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * bump(mid + half * r.nodes[i]);
  return half * s.value();
}

double bump_mass() {
  static const double m = 2.0 * bump_integral_left(0.0);
  return m;
}

// Composite Gauss rule on [0, 1/8] with bump(x) folded into the weights.
struct FoldedRule {
  std::vector<double> x, w;
};

FoldedRule folded_rule(double y_max) {
  static const GaussRule g = gauss_legendre(16);
  // About one oscillation of cos(2 pi x y) per panel.
  const auto panels = static_cast<std::size_t>(16 + std::ceil(std::abs(y_max) * kBumpHalfWidth));
  FoldedRule out;
  const double h = kBumpHalfWidth / static_cast<double>(panels);
  CompensatedSum mass;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double x = mid + 0.5 * h * g.nodes[i];
      out.x.push_back(x);
      out.w.push_back(0.5 * h * g.weights[i] * bump(x));
      mass += out.w.back();
    }
  }
  // Normalize with the same rule so that rho^(0) = 1 to rounding.
  for (auto& w : out.w) w /= mass.value();
  return out;
}

double folded_transform(const FoldedRule& r, double y) {
  CompensatedSum s;
  const double k = 2.0 * std::numbers::pi * y;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::cos(k * r.x[i]);
  return s.value();
}

double plateau_factor(double y) {
  if (y == 0.0) return 2.0 * kPlateau;
  return std::sin(2.0 * std::numbers::pi * kPlateau * y) / (std::numbers::pi * y);
}

// eta^(y0 + k dy) for k = 0..n-1. The cosines run on a rotation recurrence
// reseeded every 512 steps.
std::vector<double> eta_transform_lattice(double y0, double dy, std::size_t n) {
  const double y_max = std::max(std::abs(y0), std::abs(y0 + dy * static_cast<double>(n)));
  const FoldedRule r = folded_rule(y_max);
  std::vector<double> rho_hat(n, 0.0);
  constexpr std::size_t kBlock = 512;
  const auto blocks = static_cast<std::int64_t>((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::size_t k0 = static_cast<std::size_t>(b) * kBlock;
    const std::size_t k1 = std::min(n, k0 + kBlock);
    std::vector<CompensatedSum> acc(k1 - k0);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double w = 2.0 * std::numbers::pi * r.x[i];
      const double start = w * (y0 + dy * static_cast<double>(k0));
      double c = std::cos(start), s = std::sin(start);
      const double cd = std::cos(w * dy), sd = std::sin(w * dy);
      for (std::size_t k = k0; k < k1; ++k) {
        acc[k - k0] += r.w[i] * c;
        const double cn = c * cd - s * sd;
        s = s * cd + c * sd;
        c = cn;
      }
    }
    for (std::size_t k = k0; k < k1; ++k) rho_hat[k] = acc[k - k0].value();
  }
  for (std::size_t k = 0; k < n; ++k) rho_hat[k] *= plateau_factor(y0 + dy * static_cast<double>(k));
  return rho_hat;
}

}  // namespace

double bump_cdf(double x) {
  if (x <= -kBumpHalfWidth) return 0.0;
  if (x >= kBumpHalfWidth) return 1.0;
  // Evaluate on the left half and reflect so that cdf(0) = 1/2 exactly.
  if (x <= 0.0) return bump_integral_left(x) / bump_mass();
  return 1.0 - bump_integral_left(-x) / bump_mass();
}

double bump_transform(double y) { return folded_transform(folded_rule(y), y); }

double eta_transform(double y) { return plateau_factor(y) * bump_transform(y); }

Cutoff::Cutoff(double D) : D_(D) {
  if (!(D > 1.0) || !std::isfinite(D)) throw DomainError("cutoff parameter D must be > 1");
}

double Cutoff::eta(double x) const {
  const double ax = std::abs(x);
  if (ax <= 0.25) return 1.0;
  if (ax >= 0.5) return 0.0;
  return bump_cdf(ax + kPlateau) - bump_cdf(ax - kPlateau);
}

double Cutoff::scale(int t) const {
  if (t < 0) throw DomainError("level t must be >= 0");
  return 2.0 * std::numbers::pi * std::pow(D_, t + 2);
}

double Cutoff::eta_t(int t, double xi) const { return eta(scale(t) * xi); }

double Cutoff::support_radius(int t) const { return 0.5 / scale(t); }

long long lemma21_default_J(const Cutoff& cutoff, int t) {
  return static_cast<long long>(std::ceil(150.0 * cutoff.scale(t)));
}

Lemma21 lemma21_check(const Cutoff& cutoff, int t, double u, long long J) {
  if (J < 1) throw DomainError("lemma21_check needs J >= 1");
  if (!std::isfinite(u)) throw DomainError("shift u must be finite");
  const double L = cutoff.scale(t);
  const double diameter = 2.0 * cutoff.support_radius(t);
  if (diameter * static_cast<double>(2 * J + 1) < 4.0)
    throw ResolutionError("eta_t support spans fewer than 4 frequency cells at J = " +
                          std::to_string(J));
  const auto n = static_cast<std::size_t>(2 * J + 1);
  const double lo = -static_cast<double>(J);
  // c_j and c_{j-u} on the lattice j = -J..J.
  const auto c = eta_transform_lattice(lo / L, 1.0 / L, n);
  const auto cu = u == 0.0 ? c : eta_transform_lattice((lo - u) / L, 1.0 / L, n);
  CompensatedSum first, second;
  for (std::size_t k = 0; k < n; ++k) {
    first += std::abs(c[k]) / L;
    second += std::abs(c[k] - cu[k]) / L;
  }
  return {first.value(), second.value(), L};
}

}  // namespace pvlab
