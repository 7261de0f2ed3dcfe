#include "mvdecay/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace mvdecay {

namespace {

struct Panel {
    double value;
    double err;
    bool ok;
};

Panel simpson_recurse(const std::function<double(double)>& f, double a,
                      double fa, double b, double fb, double m, double fm,
                      double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
        // Richardson correction; delta/15 is the leading error estimate
        return {left + right + delta / 15.0, std::abs(delta) / 15.0,
                depth > 0 || std::abs(delta) <= 15.0 * tol};
    }
    Panel l = simpson_recurse(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1);
    Panel r = simpson_recurse(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
    return {l.value + r.value, l.err + r.err, l.ok && r.ok};
}

Panel simpson(const std::function<double(double)>& f, double a, double b,
              double tol, int max_depth) {
    if (!(b > a)) return {0.0, 0.0, true};
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_depth) {
    Panel p = simpson(f, a, b, tol, max_depth);
    return {p.value, p.err, p.ok};
}

QuadratureResult integrate_with_breaks(const std::function<double(double)>& f,
                                       double a, double b,
                                       std::vector<double> breaks, double tol,
                                       int max_depth) {
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    QuadratureResult out;
    double prev = a;
    for (double x : breaks) {
        if (x <= prev + 1e-14 || x > b + 1e-14) continue;
        double hi = std::min(x, b);
        Panel p = simpson(f, prev, hi, tol, max_depth);
        out.value += p.value;
        out.est_error += p.err;
        out.converged = out.converged && p.ok;
        prev = hi;
    }
    if (prev < b - 1e-14) {
        Panel p = simpson(f, prev, b, tol, max_depth);
        out.value += p.value;
        out.est_error += p.err;
        out.converged = out.converged && p.ok;
    }
    return out;
}

} // namespace mvdecay
