#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

namespace pvlab {

/// Exact rational with a positive denominator, always stored in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  long double to_long_double() const {
    return static_cast<long double>(num) / static_cast<long double>(den);
  }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

// Representative in [0, 1).
Rational torus(const Rational& x);

// Parses "a/b", an integer, or a plain decimal ("0.6180339887", "-1.25") exactly.
// Throws DomainError on malformed input or overflow.
Rational parse_rational(std::string_view text);

// Exact dyadic value of a double when its denominator fits 2^62; otherwise the
// nearest multiple of 2^-62. Only values in [0, 1) are accepted.
Rational rational_from_double(double x);

// (num * n) mod den in [0, den), exact.
std::int64_t scaled_residue(const Rational& x, std::int64_t n);

// Signed residue of num*n mod den in (-den/2, den/2], exact. Feeds phase
// evaluations so that e(xi*n) and e(-xi*n) are exact conjugates.
std::int64_t centered_residue(const Rational& x, std::int64_t n);

}  // namespace pvlab
