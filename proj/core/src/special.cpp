#include "mvdecay/special.hpp"

#include <cmath>
#include <limits>

#include "mvdecay/constants.hpp"

namespace mvdecay {

namespace {
using cd = std::complex<double>;

cd e1_series(cd z) {
    // E1(z) = -gamma - log z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
    cd sum = 0.0, term = 1.0;
    for (int k = 1; k <= 96; ++k) {
        term *= -z / double(k);
        cd add = term / double(k);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -euler_gamma - std::log(z) - sum;
}

cd e1_contfrac(cd z) {
    // E1(z) = e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...))))), evaluated
    // by the modified Lentz scheme.  Converges for Re z >= 0 away from the
    // negative axis; we only call it for |z| > 4.
    const double tiny = 1e-300;
    cd b = z + 1.0;
    cd C = 1.0 / tiny, D = 1.0 / b, h = D;
    for (int i = 1; i <= 400; ++i) {
        double a = -double(i) * double(i);
        b += 2.0;
        D = b + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = b + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        cd delta = C * D;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-z) * h;
}
} // namespace

std::complex<double> expint_e1(std::complex<double> z) {
    if (z == cd(0.0, 0.0))
        return {std::numeric_limits<double>::infinity(), 0.0};
    return std::abs(z) <= 4.0 ? e1_series(z) : e1_contfrac(z);
}

double expint_e1(double x) { return expint_e1(cd(x, 0.0)).real(); }

// E1(ix) = -Ci(x) + i(Si(x) - pi/2) for x > 0.
double sin_integral(double x) {
    if (x == 0.0) return 0.0;
    double ax = std::abs(x);
    double v = pi / 2 + expint_e1(cd(0.0, ax)).imag();
    return x > 0 ? v : -v;
}

double cos_integral(double x) { return -expint_e1(cd(0.0, x)).real(); }

double cin(double y) {
    double ay = std::abs(y);
    if (ay == 0.0) return 0.0;
    if (ay < 1e-4) return ay * ay / 4.0;  // leading term; avoids log-Ci cancellation
    return euler_gamma + std::log(ay) - cos_integral(ay);
}

} // namespace mvdecay
