#include "mvdecay/region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mvdecay/constants.hpp"
#include "mvdecay/io.hpp"
#include "mvdecay/quadrature.hpp"

namespace mvdecay {

namespace {
const double two_pi = 2.0 * pi;

double wrap(double psi) {
    psi = std::fmod(psi, two_pi);
    return psi < 0 ? psi + two_pi : psi;
}

// |psi| folded into [0, pi]
double fold(double psi) {
    double a = std::abs(std::remainder(psi, two_pi));
    return a;
}
} // namespace

double ConvexRegion::support(double psi) const {
    switch (kind) {
        case RegionKind::point_one:
            return std::cos(psi);
        case RegionKind::segment01:
            return std::max(0.0, std::cos(psi));
        case RegionKind::segment_pm1:
            return std::abs(std::cos(psi));
        case RegionKind::disc:
            return (1.0 - r) * std::cos(psi) + r;
        case RegionKind::full_disc:
            return 1.0;
        case RegionKind::sector: {
            // hull of {1} and the arc {e^{i t}: phi <= |t| <= pi}
            double a = fold(psi);
            double arc = a >= phi ? 1.0 : std::cos(phi - a);
            return std::max(std::cos(a), arc);
        }
        case RegionKind::roots_of_unity:
        case RegionKind::polygon: {
            double best = -2.0;
            double c = std::cos(psi), s = std::sin(psi);
            for (const auto& v : vertices)
                best = std::max(best, v.real() * c + v.imag() * s);
            return best;
        }
    }
    return 0.0;
}

std::vector<double> ConvexRegion::support_kinks() const {
    std::vector<double> ks;
    switch (kind) {
        case RegionKind::point_one:
        case RegionKind::disc:
        case RegionKind::full_disc:
            break;
        case RegionKind::segment01:
        case RegionKind::segment_pm1:
            ks = {pi / 2, 3 * pi / 2};
            break;
        case RegionKind::sector:
            ks = {wrap(phi / 2), wrap(-phi / 2), wrap(phi), wrap(-phi)};
            break;
        case RegionKind::roots_of_unity:
        case RegionKind::polygon: {
            // support switches maximizer at the normals of consecutive edges;
            // registering both +-pi/2 of every edge direction is orientation-proof
            size_t n = vertices.size();
            for (size_t i = 0; i < n; ++i) {
                auto d = vertices[(i + 1) % n] - vertices[i];
                if (std::abs(d) < 1e-15) continue;
                double dir = std::atan2(d.imag(), d.real());
                ks.push_back(wrap(dir + pi / 2));
                ks.push_back(wrap(dir - pi / 2));
            }
            break;
        }
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             ks.end());
    return ks;
}

std::string ConvexRegion::describe() const {
    std::ostringstream os;
    switch (kind) {
        case RegionKind::point_one: os << "point_one"; break;
        case RegionKind::segment01: os << "segment01"; break;
        case RegionKind::segment_pm1: os << "segment_pm1"; break;
        case RegionKind::full_disc: os << "full_disc"; break;
        case RegionKind::roots_of_unity: os << "roots_of_unity(" << m << ")"; break;
        case RegionKind::disc: os << "disc(" << format_real(r) << ")"; break;
        case RegionKind::sector: os << "sector(" << format_real(phi) << ")"; break;
        case RegionKind::polygon:
            os << "polygon(";
            for (const auto& v : vertices)
                os << "[" << format_real(v.real()) << "," << format_real(v.imag()) << "]";
            os << ")";
            break;
    }
    return os.str();
}

ConvexRegion make_point_one() { return {RegionKind::point_one}; }
ConvexRegion make_segment01() { return {RegionKind::segment01}; }
ConvexRegion make_segment_pm1() { return {RegionKind::segment_pm1}; }
ConvexRegion make_full_disc() { return {RegionKind::full_disc}; }

ConvexRegion make_roots_of_unity(int m) {
    if (m < 2) throw std::invalid_argument("roots_of_unity needs m >= 2");
    ConvexRegion reg{RegionKind::roots_of_unity};
    reg.m = m;
    for (int j = 0; j < m; ++j) {
        double t = two_pi * j / m;
        reg.vertices.emplace_back(std::cos(t), std::sin(t));
    }
    return reg;
}

ConvexRegion make_disc(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("disc needs r in (0,1]");
    ConvexRegion reg{RegionKind::disc};
    reg.r = r;
    return reg;
}

ConvexRegion make_sector(double phi) {
    if (!(phi > 0.0 && phi <= pi)) throw std::invalid_argument("sector needs phi in (0,pi]");
    ConvexRegion reg{RegionKind::sector};
    reg.phi = phi;
    return reg;
}

ConvexRegion make_polygon(std::vector<std::complex<double>> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("polygon needs >= 2 vertices");
    ConvexRegion reg{RegionKind::polygon};
    for (const auto& v : vertices)
        if (std::abs(v) > 1.0 + 1e-12)
            throw std::invalid_argument("polygon vertex outside the unit disc");
    reg.vertices = std::move(vertices);
    // symmetric iff the vertex set is closed under conjugation
    reg.symmetric = true;
    for (const auto& v : reg.vertices) {
        bool found = false;
        for (const auto& w : reg.vertices)
            if (std::abs(w - std::conj(v)) < 1e-12) { found = true; break; }
        if (!found) { reg.symmetric = false; break; }
    }
    return reg;
}

ConvexRegion parse_region(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("region spec is not valid JSON: ") + e.what());
    }
    const std::string kind = j.value("kind", "");
    if (kind == "point_one") return make_point_one();
    if (kind == "segment01") return make_segment01();
    if (kind == "segment_pm1") return make_segment_pm1();
    if (kind == "full_disc") return make_full_disc();
    if (kind == "roots_of_unity") return make_roots_of_unity(j.at("m").get<int>());
    if (kind == "disc") return make_disc(j.at("r").get<double>());
    if (kind == "sector") return make_sector(j.at("phi").get<double>());
    if (kind == "polygon") {
        std::vector<std::complex<double>> vs;
        for (const auto& p : j.at("vertices"))
            vs.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        return make_polygon(std::move(vs));
    }
    throw std::invalid_argument("unknown region kind: \"" + kind + "\"");
}

double kink_angle(double psi, double alpha) {
    // atan2(sin th, cos th - alpha) = psi has the closed-form solution
    // th = psi - asin(alpha sin psi) on [0,pi]; mirror for the other half.
    psi = wrap(psi);
    if (psi <= pi) return psi - std::asin(alpha * std::sin(psi));
    double p = two_pi - psi;
    return two_pi - (p - std::asin(alpha * std::sin(p)));
}

namespace {

std::vector<double> registered_thetas(const ConvexRegion& region, double alpha) {
    std::vector<double> pts;
    for (double psi : region.support_kinks())
        pts.push_back(wrap(kink_angle(psi, alpha)));
    return pts;
}

} // namespace

double hbar(const ConvexRegion& region, double alpha) {
    auto integrand = [&](double t) {
        std::complex<double> z(alpha - std::cos(t), std::sin(t));
        double m = std::abs(z);
        if (m < 1e-15) return 0.0;
        double psi = std::atan2(std::sin(t), std::cos(t) - alpha);
        return z.real() + m * region.support(psi);
    };
    auto q = integrate_with_breaks(integrand, 0.0, two_pi,
                                   registered_thetas(region, alpha));
    if (!q.converged)
        throw std::runtime_error("hbar quadrature did not converge; est_error=" +
                                 format_real(q.est_error));
    return q.value / two_pi;
}

double kappa(const ConvexRegion& region) {
    if (hbar(region, 1.0) <= 1.0 + 1e-12) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 40 && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        (hbar(region, mid) <= 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double nu(const ConvexRegion& region) { return 1.0 + region.support(pi); }

double kappa_lower_bound(const ConvexRegion& region) {
    double h0 = hbar(region, 0.0), h1 = hbar(region, 1.0);
    if (h1 <= 1.0) return 1.0;
    if (h1 > h0) return std::min(1.0, (1.0 - h0) / (h1 - h0));
    return 0.0;
}

namespace {

// G_eps(x) = 1 - kap - max_{d in D} Re(d (e^{i eps x} - kap)); the positive
// part is discarded by the caller when needed.
double correction_integrand(const ConvexRegion& region, double kap, int eps,
                            double x) {
    std::complex<double> zeta(std::cos(x) - kap, eps * std::sin(x));
    double m = std::abs(zeta);
    if (m < 1e-15) return 1.0 - kap;
    // max_d Re(d zeta) = |zeta| h_D(-arg zeta)
    return 1.0 - kap - m * region.support(-std::atan2(zeta.imag(), zeta.real()));
}

std::vector<double> correction_breaks(const ConvexRegion& region, double kap,
                                      int eps) {
    // h_D kink at psi is met where -arg zeta = psi; for eps=+1 that is
    // A(x) = -psi with A(x) = atan2(sin x, cos x - kap), for eps=-1 A(x) = psi.
    std::vector<double> pts;
    for (double psi : region.support_kinks()) {
        double target = eps > 0 ? wrap(-psi) : psi;
        pts.push_back(wrap(kink_angle(target, kap)));
    }
    return pts;
}

// Zeros of G inside (a,b): scan then bisect so min(0,G) panels stay smooth.
void append_sign_changes(const std::function<double(double)>& g, double a,
                         double b, std::vector<double>& out) {
    const int scan = 33;
    double prev_x = a, prev_v = g(a);
    for (int i = 1; i <= scan; ++i) {
        double x = a + (b - a) * i / scan;
        double v = g(x);
        if ((prev_v < 0) != (v < 0)) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
                double mid = 0.5 * (lo + hi);
                ((g(mid) < 0) == (prev_v < 0) ? lo : hi) = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
}

// min(0, G_eps(x))/x over (0, 2pi]; the integrand is O(x) near 0 since 1 is
// in D, so cutting below 1e-6 changes nothing at the working tolerance.
double correction_integral(const ConvexRegion& region, double kap, int eps) {
    auto G = [&](double x) { return correction_integrand(region, kap, eps, x); };
    std::vector<double> breaks = correction_breaks(region, kap, eps);
    breaks.push_back(1e-6);
    breaks.push_back(two_pi);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> all = breaks;
    double prev = 1e-6;
    for (double b : breaks) {
        if (b <= prev + 1e-12 || b > two_pi + 1e-12) continue;
        append_sign_changes(G, prev, b, all);
        prev = b;
    }
    auto neg_part = [&](double x) { return std::min(0.0, G(x)) / x; };
    return integrate_with_breaks(neg_part, 1e-6, two_pi, all).value;
}

} // namespace

RegionConstants region_constants(const ConvexRegion& region) {
    RegionConstants out;
    out.hbar0 = hbar(region, 0.0);
    out.hbar1 = hbar(region, 1.0);
    out.kappa = kappa(region);
    out.nu = nu(region);
    out.lambda = two_pi * out.hbar0;
    out.kappa_lb = kappa_lower_bound(region);

    double ip = correction_integral(region, out.kappa, +1);
    double im = correction_integral(region, out.kappa, -1);
    if (region.symmetric && std::abs(ip - im) > 1e-10)
        throw std::runtime_error("correction integral asymmetry on a symmetric region: " +
                                 format_real(ip - im));
    out.cD = -out.kappa * out.nu * euler_gamma + std::min(ip, im);

    double kn = out.kappa * out.nu;
    if (std::abs(kn - 1.0) <= 1e-9) {
        out.c_finite = false;
        out.c = std::numeric_limits<double>::infinity();
    } else {
        out.c = (2.0 - kn) / (1.0 - kn) * std::exp(euler_gamma);
    }

    if (region.symmetric && out.c_finite) {
        // c' = c - 2*pi * int_0^pi w(th)/(th(2pi-th)) dth with the full
        // (unclipped) deficiency w(th) = G_{+1}(th).
        auto w = [&](double x) { return correction_integrand(region, out.kappa, +1, x); };
        std::vector<double> pts;
        for (double psi : region.support_kinks()) {
            pts.push_back(wrap(kink_angle(wrap(-psi), out.kappa)));
            pts.push_back(wrap(kink_angle(psi, out.kappa)));
        }
        pts.erase(std::remove_if(pts.begin(), pts.end(),
                                 [](double x) { return x <= 1e-9 || x >= pi; }),
                  pts.end());
        auto integrand = [&](double x) { return w(x) / (x * (two_pi - x)); };
        double I = integrate_with_breaks(integrand, 1e-9, pi, pts).value;
        out.c_prime = out.c - two_pi * I;
    }
    return out;
}

namespace {

// Solve atan2(sin th, cos th - alpha) = psi on [0, pi] by bisection; the
// closed forms below quote tangency equations, so honor them with a root
// solve rather than reusing the arcsin expression.
double tangency_angle(double psi, double alpha) {
    auto A = [&](double th) { return std::atan2(std::sin(th), std::cos(th) - alpha); };
    double lo = 0.0, hi = pi;
    for (int i = 0; i < 80 && hi - lo > 1e-14; ++i) {
        double mid = 0.5 * (lo + hi);
        (A(mid) < psi ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double arc_chord_integral(double alpha, double a, double b) {
    // int_a^b |e^{i th} - alpha| d th
    auto f = [&](double t) {
        return std::sqrt(1.0 - 2.0 * alpha * std::cos(t) + alpha * alpha);
    };
    return integrate(f, a, b).value;
}

} // namespace

double hbar_closed_form(const ConvexRegion& region, double alpha) {
    switch (region.kind) {
        case RegionKind::roots_of_unity: {
            int m = region.m;
            if (m < 3 || m % 2 == 0)
                throw std::domain_error("closed form available for odd m >= 3 only");
            int half = (m - 1) / 2;
            std::vector<double> delta(half + 2, 0.0);  // delta[1..half+1]
            for (int j = 1; j <= half + 1; ++j) {
                double psi = pi * (2 * j - 1) / m;
                delta[j] = tangency_angle(psi, alpha) - psi;
            }
            double vertex_sum = 1.0;
            for (int j = 1; j <= half; ++j) vertex_sum += 2.0 * std::cos(delta[j]);
            double arc_term = delta[1];
            for (int j = 1; j <= half; ++j)
                arc_term += (delta[j + 1] - delta[j]) * std::cos(two_pi * j / m);
            return alpha + (std::sin(pi / m) * vertex_sum - alpha * arc_term) / pi;
        }
        case RegionKind::disc:
            return region.r * (alpha + arc_chord_integral(alpha, 0.0, pi) / pi);
        case RegionKind::sector: {
            double phi = region.phi;
            double th0 = tangency_angle(phi / 2, alpha);
            double th1 = tangency_angle(phi, alpha);
            double I = th0 + (th1 - th0) * std::cos(phi);
            return alpha + (std::sin(th0) + std::sin(th1 - phi) - std::sin(th0 - phi) -
                            alpha * I + arc_chord_integral(alpha, th1, pi)) / pi;
        }
        default:
            throw std::domain_error("no closed form for this region kind");
    }
}

std::string constants_to_json(const ConvexRegion& region, const RegionConstants& k) {
    nlohmann::json j;
    j["region"] = region.describe();
    j["hbar0"] = format_real(k.hbar0);
    j["hbar1"] = format_real(k.hbar1);
    j["kappa"] = format_real(k.kappa);
    j["nu"] = format_real(k.nu);
    j["lambda"] = format_real(k.lambda);
    j["cD"] = format_real(k.cD);
    j["c"] = k.c_finite ? format_real(k.c) : std::string("inf");
    if (k.c_prime) j["c_prime"] = format_real(*k.c_prime);
    j["kappa_lower_bound"] = format_real(k.kappa_lb);
    return j.dump();
}

} // namespace mvdecay
