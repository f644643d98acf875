#pragma once

namespace pvlab {

/// eta = 1_{[-3/8, 3/8]} * rho with rho a normalized bump exp(-1/(1 - (8x)^2))
/// on [-1/8, 1/8]. eta is 1 on |x| <= 1/4 and 0 on |x| >= 1/2;
/// eta_t(xi) = eta(2 pi D^{t+2} xi).
class Cutoff {
 public:
  explicit Cutoff(double D = 33.0);

  double D() const { return D_; }
  double eta(double x) const;
  double eta_t(int t, double xi) const;
  // L_t = 2 pi D^{t+2}
  double scale(int t) const;
  // eta_t vanishes for |xi| >= 1 / (4 pi D^{t+2}).
  double support_radius(int t) const;

 private:
  double D_;
};

// Normalized bump distribution function, exact 0 / 1 outside [-1/8, 1/8].
double bump_cdf(double x);
// Fourier transform of the normalized bump, rho^(y) = int rho(x) cos(2 pi x y) dx.
double bump_transform(double y);
// Fourier transform of eta: sin(3 pi y / 4) / (pi y) * rho^(y).
double eta_transform(double y);

struct Lemma21 {
  double first = 0.0;   // sum_{|j| <= J} |c_j|,            c_j = int_T e(-xi j) eta_t(xi) dxi
  double second = 0.0;  // sum_{|j| <= J} |c_j - c_{j-u}|
  double L = 0.0;       // 2 pi D^{t+2}
};

/// Both l1 norms from the closed form c_j = eta^(j / L) / L. ResolutionError
/// when the support of eta_t covers fewer than 4 of the 2J + 1 frequency cells.
Lemma21 lemma21_check(const Cutoff& cutoff, int t, double u, long long J);

// J large enough that the truncated tails are far below 1e-3.
long long lemma21_default_J(const Cutoff& cutoff, int t);

}  // namespace pvlab
