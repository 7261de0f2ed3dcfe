#include "mvdecay/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mvdecay/constants.hpp"
#include "mvdecay/io.hpp"
#include "mvdecay/special.hpp"

namespace mvdecay {

namespace {

using cplx = std::complex<double>;

// segments of the kernel clipped to (1, u]: [a, b) bounds with value c
struct Seg {
    double a, b;
    cplx c;
};

std::vector<Seg> clipped_segments(const ChiSpec& chi, double u) {
    std::vector<Seg> out;
    if (!chi.is_piecewise())
        throw std::domain_error("closed-form functionals need a piecewise kernel");
    if (chi.breaks.empty()) {
        if (u > 1.0) out.push_back({1.0, u, {1.0, 0.0}});
        return out;
    }
    for (size_t s = 0; s < chi.breaks.size(); ++s) {
        double a = chi.breaks[s];
        double b = s + 1 < chi.breaks.size() ? chi.breaks[s + 1] : u;
        b = std::min(b, u);
        if (b > a) out.push_back({a, b, chi.values[s]});
    }
    return out;
}

// integral_a^b (1 - Re(c e^{-ivy}))/v dv via sine/cosine integrals
double seg_J(const Seg& s, double y) {
    double base = std::log(s.b / s.a);
    if (y == 0.0) return (1.0 - s.c.real()) * base;
    double ay = std::abs(y), sg = y > 0 ? 1.0 : -1.0;
    double dci = cos_integral(ay * s.b) - cos_integral(ay * s.a);
    double dsi = sin_integral(ay * s.b) - sin_integral(ay * s.a);
    return base - s.c.real() * dci - s.c.imag() * sg * dsi;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, double* fbest) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    double xm = 0.5 * (a + b), fm = f(xm);
    if (f1 < fm) { xm = x1; fm = f1; }
    if (f2 < fm) { xm = x2; fm = f2; }
    if (fbest) *fbest = fm;
    return xm;
}

} // namespace

double chi_M0(const ChiSpec& chi, double u) {
    if (u <= 1.0) return 0.0;
    if (!chi.is_piecewise()) {
        double a = std::abs(chi.rot_alpha);
        return a == 0.0 ? 0.0 : cin(a * u) - cin(a);
    }
    double acc = 0.0;
    for (const auto& s : clipped_segments(chi, u))
        acc += (1.0 - s.c.real()) * std::log(s.b / s.a);
    return acc;
}

double chi_J(const ChiSpec& chi, double u, double y) {
    if (u <= 1.0) return 0.0;
    if (!chi.is_piecewise()) {
        double d = std::abs(chi.rot_alpha - y);
        double head = cin(std::abs(y));
        return d == 0.0 ? head : head + cin(d * u) - cin(d);
    }
    double acc = cin(std::abs(y));
    for (const auto& s : clipped_segments(chi, u)) acc += seg_J(s, y);
    return acc;
}

ChiFunctionals chi_functionals(const ChiSpec& chi, double u, double Y) {
    ChiFunctionals out;
    out.M0 = chi_M0(chi, u);
    if (u <= 1.0) return out;
    auto J = [&](double y) { return chi_J(chi, u, y); };
    const double step = pi / (4.0 * u);
    for (int attempt = 0;; ++attempt) {
        auto n = (long)std::ceil(Y / step);
        double best = J(0.0), ybest = 0.0;
        for (long i = -n; i <= n; ++i) {
            double y = double(i) * step;
            double v = J(y);
            if (v < best) { best = v; ybest = y; }
        }
        if (std::abs(ybest) < double(n - 1) * step) {
            out.y_star = golden_min(J, ybest - step, ybest + step, 1e-8, &out.M);
            return out;
        }
        if (attempt >= 4)
            throw std::runtime_error("twist scan hit the boundary even at Y=" +
                                     format_real(Y));
        Y *= 2.0;  // minimizer on the boundary: widen and retry
    }
}

namespace {

// Re integral_0^u (1 - chi(v) e^{-ivy}) e^{-tv}/v dv in closed form.
double damped_J(const std::vector<Seg>& segs, double u, double t, double y) {
    cplx z(t, y);
    // head over [0,1] where chi = 1: log(z/t) + E1(z) - E1(t), limit y->0 fine
    double acc;
    if (y == 0.0) acc = 0.0;
    else acc = (std::log(z / cplx(t)) + expint_e1(z) - cplx(expint_e1(t))).real();
    for (const auto& s : segs) {
        acc += expint_e1(t * s.a) - expint_e1(t * s.b);
        acc -= (s.c * (expint_e1(s.a * z) - expint_e1(s.b * z))).real();
    }
    return acc;
}

} // namespace

double damped_M(const ChiSpec& chi, double u, double t, double* y_hint) {
    auto segs = clipped_segments(chi, u);
    auto f = [&](double y) { return damped_J(segs, u, t, y); };
    double y0 = y_hint ? *y_hint : 0.0;
    // localize around the hint, then refine; fall back to a coarse scan when
    // the local bracket fails to beat the untwisted value
    double step = pi / (4.0 * u);
    double best = f(y0), ybest = y0;
    for (int i = 1; i <= 32; ++i) {
        for (double y : {y0 + i * step, y0 - i * step}) {
            double v = f(y);
            if (v < best) { best = v; ybest = y; }
        }
    }
    double v0 = f(0.0);
    if (v0 < best) { best = v0; ybest = 0.0; }
    double M;
    double ystar = golden_min(f, ybest - step, ybest + step, 1e-8, &M);
    if (y_hint) *y_hint = ystar;
    return expint_e1(t * u) + M;
}

double damped_integral_envelope(const ChiSpec& chi, double u) {
    const double t_lo = 1e-6 / u, t_hi = 1e3 / u;
    const int n = 400;
    const double dl = std::log(t_hi / t_lo) / n;
    double y_hint = 0.0;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double t = t_lo * std::exp(i * dl);
        double Mt = damped_M(chi, u, t, &y_hint);
        double F = (1.0 - std::exp(-2.0 * t * u)) / t * std::exp(-Mt) / t;
        acc += (i == 0 || i == n ? 0.5 : 1.0) * F * t;  // d t = t d(log t)
    }
    acc *= dl;
    double tail_small = 2.0 * u * u * std::exp(euler_gamma) * t_lo;
    double tail_large = 1.0 / t_hi;
    return (acc + tail_small + tail_large) / u;
}

std::complex<double> kernel_laplace(const ChiSpec& chi, std::complex<double> s) {
    if (!chi.is_piecewise()) {
        cplx sa = s - cplx(0.0, chi.rot_alpha);
        return expint_e1(s) - expint_e1(sa);
    }
    cplx acc{};
    if (chi.breaks.empty()) return acc;
    for (size_t i = 0; i < chi.breaks.size(); ++i) {
        double a = chi.breaks[i];
        cplx upper = i + 1 < chi.breaks.size()
                         ? expint_e1(s * chi.breaks[i + 1])
                         : cplx{};  // E1 -> 0 at infinity
        acc += (1.0 - chi.values[i]) * (expint_e1(s * a) - upper);
    }
    return acc;
}

} // namespace mvdecay
