#pragma once
#include <complex>

namespace mvdecay {

// Principal-branch exponential integral E1(z) for Re z >= 0, z != 0
// (series for small |z|, modified-Lentz continued fraction otherwise).
// Everything else here is derived from it so the sine/cosine integrals and
// the real E1 share one tested primitive.
std::complex<double> expint_e1(std::complex<double> z);

double expint_e1(double x);  // x > 0
double sin_integral(double x);  // Si, odd in x
double cos_integral(double x);  // Ci, x > 0
// Cin(y) = gamma + log|y| - Ci(|y|), even, Cin(0) = 0; the entire variant
// of the cosine integral, safe through y = 0.
double cin(double y);

} // namespace mvdecay
