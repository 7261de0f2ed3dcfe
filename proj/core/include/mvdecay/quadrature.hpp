#pragma once
#include <functional>
#include <vector>

namespace mvdecay {

struct QuadratureResult {
    double value = 0.0;
    double est_error = 0.0;
    bool converged = true;
};

// Adaptive Simpson on [a,b] to absolute tolerance tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol = 1e-11, int max_depth = 48);

// Same, but the integration is split at the given interior points first.
// Integrands here are piecewise smooth; subdividing exactly at the kinks
// restores Simpson's high-order convergence.
QuadratureResult integrate_with_breaks(const std::function<double(double)>& f,
                                       double a, double b,
                                       std::vector<double> breaks,
                                       double tol = 1e-11, int max_depth = 48);

} // namespace mvdecay
