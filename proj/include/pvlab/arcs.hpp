#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pvlab/numtheory.hpp"
#include "pvlab/rational.hpp"

namespace pvlab {

/// Major arcs: |xi - a/q| <= (log N)^alpha / N around a/q with q <= (log N)^alpha.
struct ArcDecomposition {
  std::int64_t N = 3;
  double alpha = 1.0;

  ArcDecomposition(std::int64_t N, double alpha);

  long double log_power() const;  // (log N)^alpha
  long double halfwidth() const;  // (log N)^alpha / N
  // floor((log N)^alpha), saturated at int64 max.
  std::int64_t q_max() const;
  // Centers a/q of all major arcs, q <= min(q_max, q_limit).
  std::vector<FareyPoint> centers(std::int64_t q_limit) const;
};

struct ArcClass {
  bool major = false;
  FareyPoint center;  // witness with the smallest q (then the nearest a); 0/1 if minor
};

ArcClass arc_classify(const ArcDecomposition& arcs, const Rational& xi);

}  // namespace pvlab
