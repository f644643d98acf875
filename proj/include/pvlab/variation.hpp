#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pvlab {

// Sequences are plain spans of finite doubles; position i holds the term with
// index i + 1 where the math indexes from 1.

struct VariationResult {
  double value = 0.0;
  // Zero-based positions of one maximizing subsequence, strictly increasing.
  std::vector<std::size_t> path;
  bool approximate = false;
};

/// Exact r-variation by the O(J^2) dynamic program
/// f(j) = max(0, max_{i<j} f(i) + |a_j - a_i|^r). Ties go to the smaller
/// predecessor, so paths are deterministic. The inner max runs on OpenMP for
/// long sequences with a result identical to serial::variation_dp.
VariationResult variation_exact(std::span<const double> seq, double r);

/// sup_n |a_n| + V_r.
double variation_norm(std::span<const double> seq, double r);

/// APPROXIMATE: collapses the sequence to its turning points, then drops
/// adjacent turning-point pairs whose swing is below `threshold` before running
/// the exact DP. The result is a lower bound on V_r; with threshold 0 it only
/// removes points no maximizer needs. Intended for J beyond ~2e4.
VariationResult variation_approx(std::span<const double> seq, double r, double threshold);

/// Z_eps block boundaries N_k = floor(2^{k^eps}), k = 0, 1, ..., with repeated
/// values collapsed; covers indices up to `length`.
struct BlockPartition {
  double epsilon = 0.5;
  std::vector<std::size_t> boundaries;

  static BlockPartition for_length(double epsilon, std::size_t length);
};

struct LongShortSplit {
  double long_part = 0.0;
  double short_part = 0.0;
};

/// Long variation over indices in Z_eps and short variation over the blocks
/// [N_{k-1}, N_k) (the last block runs to the end of the sequence).
LongShortSplit long_short_split(std::span<const double> seq, double r, const BlockPartition& part);

struct SupDomination {
  double lhs = 0.0;  // sup |a_n|
  double rhs = 0.0;  // |a_{n0}| + V_r
};

// n0 is 1-based.
SupDomination sup_domination_check(std::span<const double> seq, double r, std::size_t n0);

// |d|^r with exact shortcuts for r = 1, 2.
double jump_cost(double d, double r);

namespace serial {

// Reference implementation of the exact DP, single-threaded.
VariationResult variation_dp(std::span<const double> seq, double r);

}  // namespace serial

}  // namespace pvlab
