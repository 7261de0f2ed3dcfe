#include "mvdecay/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "mvdecay/constants.hpp"
#include "mvdecay/io.hpp"

namespace mvdecay {

namespace {

using cplx = std::complex<double>;

size_t checked_steps(double U, double h) {
    double n = U / h;
    auto N = (size_t)std::llround(n);
    if (std::abs(n - double(N)) > 1e-9 || N == 0)
        throw std::invalid_argument("U/h must be integral (U=" + format_real(U) +
                                    ", h=" + format_real(h) + ")");
    return N;
}

// --- piecewise kernel: prefix-sum marching, O(N * segments) ---------------
//
// The convolution splits into exact sub-integrals of sigma over t-windows
// bounded by the kernel breaks; each window integral is a grid trapezoid
// plus linearly-interpolated partial panels, so off-grid breaks cost no
// accuracy. The unknown sigma_k enters only through the window [u-1, u]
// (the structural chi=1 head), with coefficient h/2.
std::vector<cplx> march_piecewise(const ChiSpec& chi, double U, double h) {
    const size_t N = checked_steps(U, h);
    // normalized segments (lo_s, hi_s] -> v_s over the kernel argument > 1
    std::vector<double> lo, hi;
    std::vector<cplx> val;
    if (chi.breaks.empty()) {
        lo = {1.0};
        hi = {std::numeric_limits<double>::infinity()};
        val = {{1.0, 0.0}};
    } else {
        for (size_t s = 0; s < chi.breaks.size(); ++s) {
            lo.push_back(chi.breaks[s]);
            hi.push_back(s + 1 < chi.breaks.size()
                             ? chi.breaks[s + 1]
                             : std::numeric_limits<double>::infinity());
            val.push_back(chi.values[s]);
        }
    }

    std::vector<cplx> sig(N + 1), P(N + 1);  // P[k] = sum_{j<=k} sig[j]
    size_t k = 0;
    for (; k <= N && k * h <= 1.0 + 1e-12; ++k) {
        sig[k] = 1.0;
        P[k] = (k ? P[k - 1] : cplx{}) + sig[k];
    }

    auto lerp = [&](double x) -> cplx {
        double xi = x / h;
        auto j = (size_t)xi;
        if (j >= N) return sig[N];
        double f = xi - double(j);
        return sig[j] * (1.0 - f) + sig[j + 1] * f;
    };

    // integral of sigma over [x, y] for y <= u_k; when y == u_k the sigma_k
    // term (coefficient h/2) is EXCLUDED and accounted by the caller.
    auto window = [&](double x, double y, size_t kcur) -> cplx {
        if (y <= x + 1e-15) return {};
        auto i0 = (long)std::ceil(x / h - 1e-7);
        auto i1 = (long)std::floor(y / h + 1e-7);
        if (i0 < 0) i0 = 0;
        if (i1 > (long)kcur) i1 = (long)kcur;
        cplx acc{};
        if (i1 < i0) {  // both ends inside one panel
            return (y - x) * 0.5 * (lerp(x) + lerp(y));
        }
        if (i1 == (long)kcur) {  // trapezoid [i0..k] minus the sigma_k term
            acc = h * (P[kcur - 1] - P[i0] + 0.5 * sig[i0]);
        } else if (i1 > i0) {
            acc = h * (P[i1] - P[i0] + 0.5 * (sig[i0] - sig[i1]));
        }
        double wl = i0 * h - x;
        if (wl > 1e-15) acc += wl * 0.5 * (lerp(x) + sig[i0]);
        double wr = y - i1 * h;
        if (wr > 1e-15 && i1 < (long)kcur) acc += wr * 0.5 * (sig[i1] + lerp(y));
        return acc;
    };

    for (; k <= N; ++k) {
        double u = k * h;
        cplx acc = window(u - 1.0, u, k);  // head, sigma_k excluded
        for (size_t s = 0; s < lo.size(); ++s) {
            if (u <= lo[s]) break;  // later segments start even higher
            double a = std::max(0.0, u - hi[s]);
            double b = u - lo[s];
            acc += val[s] * window(a, b, k);
        }
        sig[k] = acc / (u - 0.5 * h);
        P[k] = P[k - 1] + sig[k];
    }
    return sig;
}

// --- general kernel on the grid: direct O(N^2) marching -------------------
//
// cg holds kernel values at grid points with the AVERAGE stored at interior
// jump indices; `jumps` maps a grid index to (left, right) limits so the
// convolution endpoint t=0 (kernel argument u_k, a domain boundary) can use
// the one-sided left value.
std::vector<cplx> march_general(const std::vector<cplx>& cg,
                                const std::map<size_t, std::pair<cplx, cplx>>& jumps,
                                double h) {
    const size_t N = cg.size() - 1;
    std::vector<cplx> sig(N + 1);
    size_t k = 0;
    for (; k <= N && k * h <= 1.0 + 1e-12; ++k) sig[k] = 1.0;
    for (; k <= N; ++k) {
        double u = k * h;
        cplx acc = 0.5 * cg[k];  // j=0 term, sigma_0 = 1
        if (auto it = jumps.find(k); it != jumps.end())
            acc += 0.5 * (it->second.first - cg[k]);
        const cplx* cgp = cg.data() + k;
        for (size_t j = 1; j < k; ++j) acc += sig[j] * cgp[-(long)j];
        sig[k] = h * acc / (u - 0.5 * h);
    }
    return sig;
}

std::vector<cplx> rotation_grid(double alpha, size_t N, double h,
                                std::map<size_t, std::pair<cplx, cplx>>& jumps) {
    std::vector<cplx> cg(N + 1);
    for (size_t j = 0; j <= N; ++j) {
        double t = j * h;
        cg[j] = t <= 1.0 + 1e-12 ? cplx{1.0, 0.0} : std::polar(1.0, alpha * t);
    }
    double m = 1.0 / h;
    auto q = (size_t)std::llround(m);
    if (std::abs(m - double(q)) < 1e-9 && q <= N) {
        cplx left{1.0, 0.0}, right = std::polar(1.0, alpha);
        cg[q] = 0.5 * (left + right);
        jumps[q] = {left, right};
    }
    return cg;
}

std::vector<cplx> march(const ChiSpec& chi, double U, double h) {
    if (chi.is_piecewise()) return march_piecewise(chi, U, h);
    std::map<size_t, std::pair<cplx, cplx>> jumps;
    auto cg = rotation_grid(chi.rot_alpha, checked_steps(U, h), h, jumps);
    return march_general(cg, jumps, h);
}

} // namespace

cplx SigmaSolution::at(double u) const {
    if (u <= 0.0) return values.front();
    double xi = u / h;
    auto j = (size_t)xi;
    if (j + 1 >= values.size()) return values.back();
    double f = xi - double(j);
    return values[j] * (1.0 - f) + values[j + 1] * f;
}

size_t SigmaSolution::index_of(double u) const {
    auto k = (size_t)std::llround(u / h);
    if (k >= values.size() || std::abs(u - double(k) * h) > 1e-9)
        throw std::invalid_argument("u=" + format_real(u) + " is not a grid point");
    return k;
}

SigmaSolution solve_sigma(const ChiSpec& chi, double U, double h,
                          bool estimate_error) {
    if (h > 1.0 / 64 + 1e-12)
        throw std::invalid_argument("step too coarse: h must be <= 1/64");
    if (U < 1.0) throw std::invalid_argument("U must be >= 1");
    chi.validate();
    SigmaSolution out;
    out.h = h;
    out.U = U;
    out.values = march(chi, U, h);
    if (estimate_error) {
        auto fine = march(chi, U, h / 2);
        out.est_error = std::abs(out.values.back() - fine.back());
    }
    return out;
}

// --- series oracle ---------------------------------------------------------

std::complex<double> sigma_series_oracle(const ChiSpec& chi, double u, int n_max) {
    if (u > 6.0 + 1e-12)
        throw std::invalid_argument("series oracle certified for u <= 6 only");
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    chi.validate();
    const double h = 1.0 / 1024;
    const auto N = (size_t)std::ceil(u / h - 1e-9);
    const double top = double(N) * h;  // evaluate at the enclosing grid point

    // g(t) = (1 - chi(t))/t, zero on [0,1]; grid samples are the
    // left-continuous values, jumps are patched by panel corrections.
    std::vector<cplx> g(N + 1);
    for (size_t j = 0; j <= N; ++j) {
        double t = double(j) * h;
        g[j] = t <= 1.0 + 1e-12 ? cplx{} : (1.0 - chi(t)) / t;
    }
    struct Jump {
        size_t panel;           // break inside (panel*h, (panel+1)*h), or == grid index
        bool on_grid;
        double pos, w1, w2, frac;  // split widths; frac for f(u_j - pos) lerp
        cplx gl, gr;
    };
    std::vector<Jump> jumps;
    auto add_jump = [&](double b, cplx left_chi, cplx right_chi) {
        if (b <= 1.0 - 1e-12 || b >= top - 1e-12) return;
        if (std::abs(left_chi - right_chi) < 1e-15) return;
        Jump J;
        J.pos = b;
        cplx gl = b <= 1.0 ? cplx{} : (1.0 - left_chi) / b;
        J.gl = gl;
        J.gr = (1.0 - right_chi) / b;
        double bi = b / h;
        auto q = (size_t)std::llround(bi);
        if (std::abs(bi - double(q)) < 1e-7) {
            J.on_grid = true;
            J.panel = q;
            g[q] = gl;  // keep the left-continuous convention exact
        } else {
            J.on_grid = false;
            J.panel = (size_t)bi;
            J.w1 = b - double(J.panel) * h;
            J.w2 = double(J.panel + 1) * h - b;
            J.frac = J.w2 / h;  // f(u_j - b) = lerp(f[j-p-1], f[j-p]; frac)
        }
        jumps.push_back(J);
    };
    if (chi.is_piecewise()) {
        for (size_t i = 0; i < chi.breaks.size(); ++i)
            add_jump(chi.breaks[i], chi.value_left(i), chi.value_right(i));
    } else {
        add_jump(1.0, {1.0, 0.0}, std::polar(1.0, chi.rot_alpha));
    }

    std::vector<cplx> prev(N + 1, cplx{1.0, 0.0});  // I_0
    std::vector<cplx> cur(N + 1);
    cplx total{1.0, 0.0};
    double fact = 1.0, sign = -1.0, last_sup = 0.0;
    int n = 1;
    for (; n <= n_max; ++n) {
        fact *= n;
        double sup = 0.0;
        for (size_t j = 0; j <= N; ++j) {
            double uj = double(j) * h;
            cplx acc{};
            if (uj > 1.0 + 1e-12) {
                // trapezoid of g(t) * I_{n-1}(u_j - t) over [0, u_j]
                for (size_t m = 1; m < j; ++m) acc += g[m] * prev[j - m];
                acc += 0.5 * (g[0] * prev[j] + g[j] * prev[0]);
                acc *= h;
                for (const auto& J : jumps) {
                    if (J.pos >= uj - 1e-12) continue;
                    if (J.on_grid) {
                        // panel right of the jump wants the right limit
                        acc += 0.5 * h * (J.gr - J.gl) * prev[j - J.panel];
                    } else {
                        size_t p = J.panel;
                        if (p + 1 > j) continue;
                        cplx fb = prev[j - p - 1] * (1.0 - J.frac) + prev[j - p] * J.frac;
                        cplx naive = 0.5 * h * (g[p] * prev[j - p] + g[p + 1] * prev[j - p - 1]);
                        cplx split = 0.5 * J.w1 * (g[p] * prev[j - p] + J.gl * fb) +
                                     0.5 * J.w2 * (J.gr * fb + g[p + 1] * prev[j - p - 1]);
                        acc += split - naive;
                    }
                }
            }
            cur[j] = acc;
            sup = std::max(sup, std::abs(acc));
        }
        total += sign / fact * cur[N];
        sign = -sign;
        last_sup = sup;
        if (sup == 0.0) break;  // I_n vanishes identically for n >= u
        prev.swap(cur);
    }
    double fact_max = fact;
    for (int m = n; m < n_max; ++m) fact_max *= (m + 1);
    double trunc = last_sup / fact_max;
    if (trunc > 1e-8)
        throw std::runtime_error("series truncation estimate " + format_real(trunc) +
                                 " exceeds 1e-8");
    return total;
}

// --- Laplace transform ------------------------------------------------------

LaplaceResult laplace(const std::vector<std::complex<double>>& f, double h,
                      std::complex<double> s) {
    if (f.size() < 2) throw std::invalid_argument("laplace needs a gridded function");
    LaplaceResult out;
    cplx acc = 0.5 * f[0];
    for (size_t k = 1; k + 1 < f.size(); ++k)
        acc += f[k] * std::exp(-s * (double(k) * h));
    double U = double(f.size() - 1) * h;
    acc += 0.5 * f.back() * std::exp(-s * U);
    out.value = h * acc;
    double re = std::max(s.real(), 1e-300);
    out.tail_estimate = std::abs(f.back()) * std::exp(-re * U) / re;
    return out;
}

// --- delay ODE --------------------------------------------------------------

namespace {

std::vector<cplx> rho_march(cplx alpha, double U, double h) {
    const size_t N = checked_steps(U, h);
    std::vector<cplx> rho(N + 1), drv(N + 1);
    const cplx c = -(1.0 - alpha);

    size_t k = 0;
    for (; k <= N && double(k) * h <= 1.0 + 1e-12; ++k) rho[k] = 1.0;
    size_t m1 = k - 1;  // last index with u <= 1

    auto hist = [&](double x) -> cplx {
        if (x <= 1.0 + 1e-12) return {1.0, 0.0};
        double xi = x / h;
        auto j = (size_t)xi;
        double f = xi - double(j);
        if (f < 1e-12) return rho[j];
        if (1.0 - f < 1e-12) return rho[j + 1];
        // cubic Hermite with the stored derivatives
        double f2 = f * f, f3 = f2 * f;
        double h00 = 2 * f3 - 3 * f2 + 1, h10 = f3 - 2 * f2 + f;
        double h01 = -2 * f3 + 3 * f2, h11 = f3 - f2;
        return h00 * rho[j] + h * h10 * drv[j] + h01 * rho[j + 1] + h * h11 * drv[j + 1];
    };
    auto f = [&](double u) -> cplx { return u <= 1.0 ? cplx{} : c * hist(u - 1.0) / u; };

    // store the RIGHT derivative at the kink u=1 so history interpolation on
    // the first panel past 1 is first-order exact
    drv[m1] = double(m1) * h >= 1.0 - 1e-12 ? c * hist(double(m1) * h - 1.0) / (double(m1) * h)
                                            : cplx{};
    for (k = m1; k < N; ++k) {
        double u = double(k) * h;
        // delay >= 1 > h: no stage feedback, RK4 collapses to Simpson
        cplx k1 = k == m1 ? drv[m1] : f(u);
        cplx km = f(u + 0.5 * h);
        cplx k4 = f(u + h);
        rho[k + 1] = rho[k] + h / 6.0 * (k1 + 4.0 * km + k4);
        drv[k + 1] = k4;
    }
    return rho;
}

} // namespace

SigmaSolution rho_alpha(std::complex<double> alpha, double U, double h,
                        bool estimate_error) {
    if (alpha.real() >= 1.0) throw std::invalid_argument("rho needs Re alpha < 1");
    if (h > 1.0 / 64 + 1e-12) throw std::invalid_argument("step too coarse: h must be <= 1/64");
    SigmaSolution out;
    out.h = h;
    out.U = U;
    out.values = rho_march(alpha, U, h);
    if (estimate_error) {
        auto fine = rho_march(alpha, U, h / 2);
        out.est_error = std::abs(out.values.back() - fine.back());
    }
    return out;
}

// --- tail-aligned kernel pair ------------------------------------------------

namespace {

std::vector<cplx> hat_grid(const std::vector<cplx>& sig, double u, double h,
                           std::map<size_t, std::pair<cplx, cplx>>& jumps) {
    const size_t N = sig.size() - 1;
    const size_t half = N / 2;
    std::vector<cplx> cg(N + 1);
    auto unit_conj = [&](size_t idx) -> cplx {
        cplx v = sig[idx];
        double m = std::abs(v);
        return m < 1e-300 ? cplx{1.0, 0.0} : std::conj(v) / m;
    };
    for (size_t j = 0; j <= N; ++j) {
        double t = double(j) * h;
        if (t <= 1.0 + 1e-12) cg[j] = 1.0;
        else if (j < half) cg[j] = {0.0, 1.0};
        else if (j == half) {
            cplx left{0.0, 1.0}, right = unit_conj(N - j);
            cg[j] = 0.5 * (left + right);
            jumps[j] = {left, right};
        } else cg[j] = unit_conj(N - j);  // conj(sigma(u - t))/|sigma(u - t)|
    }
    auto q = (size_t)std::llround(1.0 / h);
    cplx left{1.0, 0.0}, right{0.0, 1.0};
    cg[q] = 0.5 * (left + right);
    jumps[q] = {left, right};
    (void)u;
    return cg;
}

} // namespace

TailAlignedPair tail_aligned_pair(double u, double h) {
    if (u < 8.0) throw std::invalid_argument("tail-aligned pair needs u >= 8");
    const size_t N = checked_steps(u, h);
    if (N % 2 || std::abs(std::llround(1.0 / h) * h - 1.0) > 1e-9)
        throw std::invalid_argument("grid must contain u/2 and 1");
    TailAlignedPair out;
    ChiSpec base = chi_three_phase(u);
    out.sigma.h = h;
    out.sigma.U = u;
    out.sigma.values = march_piecewise(base, u, h);

    std::map<size_t, std::pair<cplx, cplx>> jumps;
    auto cg = hat_grid(out.sigma.values, u, h, jumps);
    out.sigma_hat.h = h;
    out.sigma_hat.U = u;
    out.sigma_hat.values = march_general(cg, jumps, h);

    {  // error estimates from the half-step pair
        auto sig2 = march_piecewise(base, u, h / 2);
        out.sigma.est_error = std::abs(out.sigma.values.back() - sig2.back());
        std::map<size_t, std::pair<cplx, cplx>> jumps2;
        auto cg2 = hat_grid(sig2, u, h / 2, jumps2);
        auto hat2 = march_general(cg2, jumps2, h / 2);
        out.sigma_hat.est_error = std::abs(out.sigma_hat.values.back() - hat2.back());
    }

    out.lhs = out.sigma_hat.values.back() - out.sigma.values.back();

    const size_t half = N / 2;
    double acc = 0.0;  // integral_{u/2}^u |sigma(u-t)|/t dt
    for (size_t j = half; j <= N; ++j) {
        double w = (j == half || j == N) ? 0.5 : 1.0;
        acc += w * std::abs(out.sigma.values[N - j]) / (double(j) * h);
    }
    out.mid = h * acc;

    acc = 0.0;  // (1/u) integral_0^{u/2} |sigma|
    for (size_t j = 0; j <= half; ++j) {
        double w = (j == 0 || j == half) ? 0.5 : 1.0;
        acc += w * std::abs(out.sigma.values[j]);
    }
    out.rhs = h * acc / u;

    if (std::abs(out.lhs.real() - out.mid) > 1e-3 || std::abs(out.lhs.imag()) > 1e-3)
        throw std::runtime_error("tail-aligned identity residual beyond grid accuracy: " +
                                 format_complex(out.lhs) + " vs " + format_real(out.mid));
    return out;
}

double rotation_tail_max(double alpha, double U, double h) {
    if (U < 50.0) throw std::invalid_argument("tail max wants U >= 50");
    auto sol = solve_sigma(chi_rotation(alpha), U, h, false);
    double best = 0.0;
    for (size_t k = sol.values.size() / 2; k < sol.values.size(); ++k)
        best = std::max(best, std::abs(sol.values[k]));
    return best;
}

double lipschitz_ratio(const SigmaSolution& sol) {
    const size_t N = sol.values.size() - 1;
    const double ex = 1.0 - 2.0 / pi;
    double best = 0.0;
    for (int i = 1; i <= 64; ++i) {
        size_t k = N * i / 64;
        double u = double(k) * sol.h;
        if (u <= 1.0 + sol.h) continue;
        for (size_t d = 1; d <= k / 2; d *= 2) {
            double v = double(k - d) * sol.h;
            if (v <= 0.0) break;
            double num = std::abs(std::abs(sol.values[k]) - std::abs(sol.values[k - d]));
            double den = std::pow((u - v) / u, ex) * std::log(u / (u - v));
            if (den > 1e-300) best = std::max(best, num / den);
        }
    }
    return best;
}

} // namespace mvdecay
