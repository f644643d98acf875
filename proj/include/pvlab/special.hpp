#pragma once

namespace pvlab {

/// Sine integral Si(x) = int_0^x sin(u)/u du. Power series for |x| <= 4,
/// Lentz continued fraction for E1(ix) beyond; absolute error well below 1e-13.
double sine_integral(double x);

/// Cosine integral Ci(x) = gamma + log x + int_0^x (cos u - 1)/u du, x > 0.
double cosine_integral(double x);

}  // namespace pvlab
