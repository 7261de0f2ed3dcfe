#pragma once
#include <complex>

#include "mvdecay/chi.hpp"

namespace mvdecay {

// Distance functionals of a kernel over [0, u]:
//   M0 = integral (1 - Re chi(v))/v dv        (no twist)
//   J(y) = integral (1 - Re chi(v) e^{-ivy})/v dv
//   M = min_y J(y), attained at y_star.
struct ChiFunctionals {
    double M0 = 0.0;
    double M = 0.0;
    double y_star = 0.0;
};

double chi_M0(const ChiSpec& chi, double u);
double chi_J(const ChiSpec& chi, double u, double y);

// Coarse scan over [-Y, Y] at the oscillation scale pi/(4u), then
// golden-section refinement to 1e-8 in y. The range doubles (up to 4 times)
// if the minimizer sits on the boundary; std::runtime_error after that.
ChiFunctionals chi_functionals(const ChiSpec& chi, double u, double Y = 64.0);

// Exponentially damped variant:
//   M(t) = E1(tu) + min_y Re integral_0^u (1 - chi(v) e^{-ivy}) e^{-tv}/v dv,
// evaluated in closed form through the complex exponential integral.
// y_hint warm-starts the minimization (pass the previous minimizer when
// sweeping t); the argmin is written back through y_hint if non-null.
double damped_M(const ChiSpec& chi, double u, double t, double* y_hint = nullptr);

// (1/u) integral_0^inf ((1 - e^{-2tu})/t) e^{-M(t)} dt/t on a log-spaced
// grid over [1e-6/u, 1e3/u] plus certified tail over-estimates
// (small t: e^{-M} <= t u e^gamma; large t: integrand <= 1/t^2).
double damped_integral_envelope(const ChiSpec& chi, double u);

// Laplace transform of (1 - chi(v))/v in closed form (zero on [0,1]).
std::complex<double> kernel_laplace(const ChiSpec& chi, std::complex<double> s);

} // namespace mvdecay
