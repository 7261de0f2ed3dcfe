#pragma once
#include <complex>
#include <vector>

#include "mvdecay/chi.hpp"

namespace mvdecay {

// Grid solution of the delay convolution equation
//   u*sigma(u) = integral_0^u sigma(t) chi(u-t) dt,   sigma = 1 on [0,1].
struct SigmaSolution {
    double h = 0.0;
    double U = 0.0;
    std::vector<std::complex<double>> values;  // on {0, h, ..., U}
    double est_error = 0.0;                    // |sigma_h(U) - sigma_{h/2}(U)|

    std::complex<double> at_grid(size_t k) const { return values[k]; }
    // linear interpolation between grid points
    std::complex<double> at(double u) const;
    size_t index_of(double u) const;  // nearest grid index, checked
};

// Trapezoidal Volterra marching. Piecewise kernels take an O(N * segments)
// prefix-sum path with the quadrature split exactly at the kernel breaks
// (on- or off-grid); the rotation kernel takes the direct O(N^2) path with
// averaged kernel values at its jump. Second-order accurate in h.
// pre: h <= 1/64, U >= 1, U/h integral (within rounding).
SigmaSolution solve_sigma(const ChiSpec& chi, double U, double h,
                          bool estimate_error = true);

// Independent check: sigma = sum_n (-1)^n/n! I_n with
// I_n(u) = integral_0^u ((1-chi(t))/t) I_{n-1}(u-t) dt, I_0 = 1, evaluated by
// trapezoid on an internal fine grid (split at kernel breaks).
// pre: u <= 6 (factorial decay certified there), n_max >= 1.
// Throws std::runtime_error if the truncation estimate |I_nmax|/nmax!
// exceeds 1e-8.
std::complex<double> sigma_series_oracle(const ChiSpec& chi, double u,
                                         int n_max = 30);

struct LaplaceResult {
    std::complex<double> value;
    double tail_estimate = 0.0;  // |f(U)| e^{-Re s * U} / Re s
};

// Trapezoidal Laplace transform of a gridded function on {0, h, ..., U}.
LaplaceResult laplace(const std::vector<std::complex<double>>& f, double h,
                      std::complex<double> s);

// Delay ODE u*rho'(u) = -(1-alpha)*rho(u-1), rho = 1 on [0,1], integrated by
// classical RK4 with cubic-Hermite interpolation of the stored history.
// Agrees with solve_sigma(rho_step(alpha)) — same equation in integrated form.
SigmaSolution rho_alpha(std::complex<double> alpha, double U, double h,
                        bool estimate_error = true);

// Two kernels that agree up to u/2, with the tail of the second aligned to
// conj(sigma) so the difference of the two solutions at u is exactly the
// (real, positive) tail integral:
//   sigma_hat(u) - sigma(u) = integral_{u/2}^u |sigma(u-t)|/t dt
//                          >= (1/u) integral_0^{u/2} |sigma(v)| dv.
struct TailAlignedPair {
    SigmaSolution sigma;      // kernel: 1, i, 0 (three_phase)
    SigmaSolution sigma_hat;  // tail-aligned kernel
    std::complex<double> lhs; // sigma_hat(u) - sigma(u)
    double mid = 0.0;         // the tail integral
    double rhs = 0.0;         // the averaged lower bound
};

// pre: u >= 8. Asserts the displayed equality to grid accuracy.
TailAlignedPair tail_aligned_pair(double u, double h = 1.0 / 256);

// max |sigma| over [U/2, U] for the rotation kernel — demonstrates
// non-decay under a pure twist. pre: U >= 50 (alpha = 0 degenerates to 1).
double rotation_tail_max(double alpha, double U, double h = 1.0 / 64);

// Largest measured ratio ||sigma(u)| - |sigma(v)|| /
// ( ((u-v)/u)^{1-2/pi} * log(u/(u-v)) ) over sampled pairs v < u; finite for
// every solution (modulus-continuity diagnostic).
double lipschitz_ratio(const SigmaSolution& sol);

} // namespace mvdecay
