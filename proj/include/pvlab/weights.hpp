#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "pvlab/numtheory.hpp"

namespace pvlab {

/// A pair of nonnegative weight sequences (w_n), (w'_n), n = 1..len, reduced to
/// the support S = {n : w_n > 0}. Everything below is indexed along S
/// (position i is original index support[i] + 1).
///
/// Comparisons run on normalized averages
///   A_N = (1/W_N) sum_{n<=N} w_n a_n,   A'_N = (1/W'_N) sum_{n<=N} w'_n a_n,
/// which is where the partial-summation identity A'_k = sum_n lambda_n^k A_n holds.
struct WeightScheme {
  std::vector<double> w, w_prime;     // as given
  std::vector<std::size_t> support;   // zero-based original indices with w > 0
  std::vector<double> W, W_prime;     // prefix sums along the support
  std::vector<double> ratio;          // w'/w along the support

  // DomainError on negative/non-finite weights, length mismatch, w' > 0 off the
  // support, or W'_1 = 0 at the first support index.
  WeightScheme(std::vector<double> w, std::vector<double> w_prime);

  std::size_t size() const { return support.size(); }
  // Values of a at the support indices.
  std::vector<double> restrict(std::span<const double> a) const;
};

enum class MonotoneCase { decreasing, increasing };

// decreasing when w'/w is nonincreasing (constant ratios count here), increasing
// when nondecreasing, empty otherwise.
std::optional<MonotoneCase> detect_case(const WeightScheme& s);

// C = max_N W_N w'_N / (W'_N w_N).
double case_constant(const WeightScheme& s);

/// Column-stochastic-like mixing matrix: lambda(n, k) for rows n and columns k.
struct LambdaMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> values;  // row-major, rows x cols
  double Lambda = 1.0;

  LambdaMatrix() = default;
  LambdaMatrix(std::size_t rows, std::size_t cols, double Lambda);

  double& at(std::size_t n, std::size_t k) { return values[n * cols + k]; }
  double at(std::size_t n, std::size_t k) const { return values[n * cols + k]; }
  // sum_{n' <= n} lambda(n', k), zero-based n
  double prefix(std::size_t n, std::size_t k) const;
};

/// Checks lambda >= 0, column sums equal to Lambda and, for every N, prefix sums
/// nonincreasing in k, to relative tolerance tol. PreconditionError names the
/// failing (N, k) pair (1-based).
void validate(const LambdaMatrix& lam, double tol = 1e-12);

struct LambdaBuild {
  MonotoneCase which = MonotoneCase::decreasing;
  LambdaMatrix lambda;
  std::optional<LambdaMatrix> lambda_tilde;  // increasing case only
  double C = 1.0;                            // increasing case constant, 1 otherwise
};

// PreconditionError if the ratio is not monotone in the requested direction.
LambdaBuild build_lambda(const WeightScheme& s, MonotoneCase which);

// Closed form of sum_{n<=N} lambda_n^k (1-based N, k along the support).
double sum1_prefix(const WeightScheme& s, std::size_t N, std::size_t k);

std::vector<double> normalized_averages(const std::vector<double>& weights_on_support,
                                        std::span<const double> a_on_support);

// b_k = sum_n lambda_n^k a_n
std::vector<double> mix(const LambdaMatrix& lam, std::span<const double> a);

struct Comparison {
  double lhs = 0.0;
  double rhs = 0.0;
};

// lhs = V_r(mix(lam, a)), rhs = Lambda V_r(a); validates lam first.
Comparison lemma51_check(const LambdaMatrix& lam, std::span<const double> a, double r);

/// Midpoint-rule value of int_0^Lambda a_{N_k(t)} dt, with
/// N_k(t) = min{N : sum_{n<=N} lambda_n^k > t}. k is zero-based.
double lemma51_integral(const LambdaMatrix& lam, std::span<const double> a, std::size_t k,
                        std::size_t samples);

struct Prop52 {
  double lhs = 0.0;  // V_r(A'_N : N)
  double rhs = 0.0;  // V_r(A_N : N)
  double Cprime = 1.0;
  MonotoneCase which = MonotoneCase::decreasing;
};

// a is given on the original indices. PreconditionError if neither case holds.
Prop52 prop52_check(const WeightScheme& s, std::span<const double> a, double r);

// |theta(N)/N - 1| (log N)^beta
double pnt_normalization_check(const PrimeTable& table, std::uint64_t N, double beta);

// Random matrix satisfying the LambdaMatrix invariants: prefix sums are
// dyadic multiples of Lambda / 2^20, so column sums are exact.
LambdaMatrix random_lambda(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double Lambda);

// CSV n,k,value with original 1-based indices via the support map.
void write_lambda_csv(std::ostream& os, const LambdaMatrix& lam,
                      std::span<const std::size_t> support);

}  // namespace pvlab
