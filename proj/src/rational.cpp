#include "pvlab/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "pvlab/errors.hpp"

namespace pvlab {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    if (n == std::numeric_limits<std::int64_t>::min() || d == std::numeric_limits<std::int64_t>::min())
      throw DomainError("rational overflow");
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational torus(const Rational& x) {
  std::int64_t r = x.num % x.den;
  if (r < 0) r += x.den;
  return Rational(r, x.den);
}

namespace {

std::int64_t parse_int(std::string_view s) {
  if (s.empty()) throw DomainError("empty integer");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw DomainError("malformed integer '" + std::string(s) + "'");
  __int128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw DomainError("malformed number '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > std::numeric_limits<std::int64_t>::max()) throw DomainError("integer overflow in '" + std::string(s) + "'");
  }
  return static_cast<std::int64_t>(neg ? -v : v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto n = parse_int(trim(text.substr(0, slash)));
    const auto d = parse_int(trim(text.substr(slash + 1)));
    return Rational(n, d);
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text), 1);
  std::string digits(text.substr(0, dot));
  const std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 18) throw DomainError("too many decimal digits in '" + std::string(text) + "'");
  if (digits.empty() || digits == "-" || digits == "+") digits += "0";
  digits += frac;
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rational(parse_int(digits), den);
}

Rational rational_from_double(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("rational_from_double expects a value in [0, 1)");
  if (x == 0.0) return Rational(0, 1);
  int exp = 0;
  const double frac = std::frexp(x, &exp);  // x = frac * 2^exp, frac in [0.5, 1)
  const int shift = 53 - exp;
  if (shift <= 62) {
    const auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
    return Rational(m, std::int64_t{1} << shift);
  }
  const auto m = static_cast<std::int64_t>(std::llround(std::ldexp(x, 62)));
  return Rational(m, std::int64_t{1} << 62);
}

std::int64_t scaled_residue(const Rational& x, std::int64_t n) {
  __int128 r = static_cast<__int128>(x.num) * n % x.den;
  if (r < 0) r += x.den;
  return static_cast<std::int64_t>(r);
}

std::int64_t centered_residue(const Rational& x, std::int64_t n) {
  std::int64_t r = scaled_residue(x, n);
  if (2 * static_cast<__int128>(r) > x.den) r -= x.den;
  return r;
}

}  // namespace pvlab
