#include "pvlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "pvlab/csv.hpp"
#include "pvlab/errors.hpp"
#include "pvlab/summation.hpp"
#include "pvlab/variation.hpp"

namespace pvlab {

WeightScheme::WeightScheme(std::vector<double> w_, std::vector<double> wp_)
    : w(std::move(w_)), w_prime(std::move(wp_)) {
  if (w.size() != w_prime.size()) throw DomainError("weight sequences differ in length");
  CompensatedSum sw, swp;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0) || !(w_prime[i] >= 0.0) || !std::isfinite(w[i]) || !std::isfinite(w_prime[i]))
      throw DomainError("weights must be finite and nonnegative (index " + std::to_string(i + 1) + ")");
    if (w[i] == 0.0) {
      if (w_prime[i] > 0.0)
        throw DomainError("w' > 0 where w = 0 (index " + std::to_string(i + 1) + "); ratio undefined");
      continue;
    }
    support.push_back(i);
    sw += w[i];
    swp += w_prime[i];
    W.push_back(sw.value());
    W_prime.push_back(swp.value());
    ratio.push_back(w_prime[i] / w[i]);
  }
  if (support.empty()) throw DomainError("weight w vanishes identically");
  if (W_prime.front() == 0.0)
    throw DomainError("W'_1 = 0 at the first support index; A'_1 is undefined");
}

std::vector<double> WeightScheme::restrict(std::span<const double> a) const {
  if (a.size() != w.size()) throw DomainError("sequence length differs from the weight length");
  std::vector<double> out;
  out.reserve(support.size());
  for (auto i : support) out.push_back(a[i]);
  return out;
}

std::optional<MonotoneCase> detect_case(const WeightScheme& s) {
  bool dec = true, inc = true;
  for (std::size_t i = 1; i < s.ratio.size(); ++i) {
    if (s.ratio[i] > s.ratio[i - 1]) dec = false;
    if (s.ratio[i] < s.ratio[i - 1]) inc = false;
  }
  if (dec) return MonotoneCase::decreasing;
  if (inc) return MonotoneCase::increasing;
  return std::nullopt;
}

double case_constant(const WeightScheme& s) {
  double C = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) C = std::max(C, s.W[i] * s.ratio[i] / s.W_prime[i]);
  return C;
}

LambdaMatrix::LambdaMatrix(std::size_t r, std::size_t c, double L)
    : rows(r), cols(c), values(r * c, 0.0), Lambda(L) {}

double LambdaMatrix::prefix(std::size_t n, std::size_t k) const {
  CompensatedSum s;
  for (std::size_t i = 0; i <= n; ++i) s += at(i, k);
  return s.value();
}

void validate(const LambdaMatrix& lam, double tol) {
  const double slack = tol * std::max(1.0, lam.Lambda) * static_cast<double>(std::max<std::size_t>(1, lam.rows));
  const auto fail = [](const std::string& what, std::size_t N, std::size_t k) {
    throw PreconditionError("lambda matrix: " + what + " at (N, k) = (" + std::to_string(N) + ", " +
                            std::to_string(k) + ")");
  };
  std::vector<double> prev(lam.rows, 0.0);
  for (std::size_t k = 0; k < lam.cols; ++k) {
    CompensatedSum s;
    for (std::size_t n = 0; n < lam.rows; ++n) {
      const double v = lam.at(n, k);
      if (!std::isfinite(v) || v < -slack) fail("negative or non-finite entry", n + 1, k + 1);
      s += v;
      const double p = s.value();
      if (k > 0 && p > prev[n] + slack) fail("prefix sum increases in k", n + 1, k + 1);
      prev[n] = p;
    }
    if (std::abs(s.value() - lam.Lambda) > slack) fail("column sum differs from Lambda", lam.rows, k + 1);
  }
}

LambdaBuild build_lambda(const WeightScheme& s, MonotoneCase which) {
  const auto detected = detect_case(s);
  const bool ok = detected && (*detected == which ||
                               // constant ratios satisfy both cases
                               std::adjacent_find(s.ratio.begin(), s.ratio.end(),
                                                  std::not_equal_to<>()) == s.ratio.end());
  if (!ok)
    throw PreconditionError(which == MonotoneCase::decreasing ? "w'/w is not nonincreasing on the support"
                                                              : "w'/w is not nondecreasing on the support");
  const std::size_t m = s.size();
  LambdaBuild out;
  out.which = which;
  out.lambda = LambdaMatrix(m, m, 1.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t n = 0; n < k; ++n)
      out.lambda.at(n, k) = s.W[n] / s.W_prime[k] * (s.ratio[n] - s.ratio[n + 1]);
    out.lambda.at(k, k) = s.W[k] / s.W_prime[k] * s.ratio[k];
  }
  if (which == MonotoneCase::increasing) {
    out.C = case_constant(s);
    LambdaMatrix t(m, m, 2.0 * out.C - 1.0);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t n = 0; n < k; ++n) t.at(n, k) = -out.lambda.at(n, k);
      t.at(k, k) = 2.0 * out.C - out.lambda.at(k, k);
    }
    out.lambda_tilde = std::move(t);
  }
  return out;
}

double sum1_prefix(const WeightScheme& s, std::size_t N, std::size_t k) {
  if (N < 1 || k < 1 || N > s.size() || k > s.size()) throw RangeError("sum1_prefix index out of range");
  if (N >= k) return 1.0;
  return (s.W_prime[N - 1] - s.W[N - 1] * s.ratio[N]) / s.W_prime[k - 1];
}

std::vector<double> normalized_averages(const std::vector<double>& wts, std::span<const double> a) {
  if (wts.size() != a.size()) throw DomainError("weights and sequence differ in length");
  std::vector<double> out(a.size());
  CompensatedSum num, den;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += wts[i] * a[i];
    den += wts[i];
    out[i] = num.value() / den.value();
  }
  return out;
}

std::vector<double> mix(const LambdaMatrix& lam, std::span<const double> a) {
  if (a.size() != lam.rows) throw DomainError("sequence length differs from the matrix rows");
  std::vector<double> b(lam.cols);
  for (std::size_t k = 0; k < lam.cols; ++k) {
    CompensatedSum s;
    for (std::size_t n = 0; n < lam.rows; ++n) s += lam.at(n, k) * a[n];
    b[k] = s.value();
  }
  return b;
}

Comparison lemma51_check(const LambdaMatrix& lam, std::span<const double> a, double r) {
  validate(lam);
  const auto b = mix(lam, a);
  return {variation_exact(b, r).value, lam.Lambda * variation_exact(a, r).value};
}

double lemma51_integral(const LambdaMatrix& lam, std::span<const double> a, std::size_t k,
                        std::size_t samples) {
  if (a.size() != lam.rows || k >= lam.cols || samples == 0 || lam.rows == 0)
    throw DomainError("lemma51_integral: bad shape");
  std::vector<double> P(lam.rows);
  CompensatedSum s;
  for (std::size_t n = 0; n < lam.rows; ++n) {
    s += lam.at(n, k);
    P[n] = s.value();
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * lam.Lambda / static_cast<double>(samples);
    auto it = std::upper_bound(P.begin(), P.end(), t);
    if (it == P.end()) --it;
    acc += a[static_cast<std::size_t>(it - P.begin())];
  }
  return acc.value() * lam.Lambda / static_cast<double>(samples);
}

Prop52 prop52_check(const WeightScheme& s, std::span<const double> a, double r) {
  const auto which = detect_case(s);
  if (!which) throw PreconditionError("w'/w is neither nonincreasing nor nondecreasing on the support");
  const auto as = s.restrict(a);
  std::vector<double> wv, wpv;
  for (auto i : s.support) {
    wv.push_back(s.w[i]);
    wpv.push_back(s.w_prime[i]);
  }
  Prop52 out;
  out.which = *which;
  out.lhs = variation_exact(normalized_averages(wpv, as), r).value;
  out.rhs = variation_exact(normalized_averages(wv, as), r).value;
  out.Cprime = *which == MonotoneCase::decreasing ? 1.0 : 4.0 * case_constant(s) - 1.0;
  return out;
}

double pnt_normalization_check(const PrimeTable& table, std::uint64_t N, double beta) {
  if (N < 2) throw DomainError("N must be >= 2");
  if (N > table.n_max()) throw RangeError("N exceeds the sieve limit");
  const double n = static_cast<double>(N);
  return std::abs(table.theta(N) / n - 1.0) * std::pow(std::log(n), beta);
}

LambdaMatrix random_lambda(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double Lambda) {
  if (rows == 0 || cols == 0) throw DomainError("random_lambda needs a nonempty shape");
  constexpr std::uint64_t kUnits = std::uint64_t{1} << 20;
  std::uniform_int_distribution<std::uint64_t> dist(0, kUnits);
  std::vector<std::uint64_t> P(rows, kUnits), col(rows);
  LambdaMatrix lam(rows, cols, Lambda);
  const double unit = Lambda / static_cast<double>(kUnits);
  for (std::size_t k = 0; k < cols; ++k) {
    for (std::size_t n = 0; n + 1 < rows; ++n) col[n] = dist(rng);
    std::sort(col.begin(), col.end() - 1);
    col[rows - 1] = kUnits;
    // Running minimum over columns keeps every prefix nonincreasing in k.
    for (std::size_t n = 0; n < rows; ++n) P[n] = k == 0 ? col[n] : std::min(P[n], col[n]);
    for (std::size_t n = 0; n < rows; ++n)
      lam.at(n, k) = static_cast<double>(P[n] - (n ? P[n - 1] : 0)) * unit;
  }
  return lam;
}

void write_lambda_csv(std::ostream& os, const LambdaMatrix& lam, std::span<const std::size_t> support) {
  CsvWriter w(os);
  w.row({"n", "k", "value"});
  const auto label = [&](std::size_t i) { return std::to_string((i < support.size() ? support[i] : i) + 1); };
  for (std::size_t k = 0; k < lam.cols; ++k)
    for (std::size_t n = 0; n < lam.rows; ++n) w.row({label(n), label(k), format_real(lam.at(n, k))});
}

}  // namespace pvlab
