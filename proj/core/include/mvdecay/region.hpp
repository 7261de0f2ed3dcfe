#pragma once
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace mvdecay {

enum class RegionKind {
    point_one,
    segment01,
    segment_pm1,
    roots_of_unity,
    disc,
    sector,
    polygon,
    full_disc,
};

// Closed convex subset D of the unit disc with 1 in D, represented by its
// support function h_D(psi) = max_{d in D} Re(d e^{-i psi}).
struct ConvexRegion {
    RegionKind kind = RegionKind::point_one;
    int m = 0;                                   // roots_of_unity
    double r = 0.0;                              // disc radius (center 1-r)
    double phi = 0.0;                            // sector half-opening
    std::vector<std::complex<double>> vertices;  // polygon
    bool symmetric = true;                       // D == conj(D)

    double support(double psi) const;
    // Angles where the support function has kinks (piecewise-smooth joints);
    // integrands built from h_D are subdivided there.
    std::vector<double> support_kinks() const;

    std::string describe() const;  // canonical textual form (fingerprint input)
};

ConvexRegion make_point_one();
ConvexRegion make_segment01();
ConvexRegion make_segment_pm1();
ConvexRegion make_roots_of_unity(int m);
ConvexRegion make_disc(double r);
ConvexRegion make_sector(double phi);
ConvexRegion make_polygon(std::vector<std::complex<double>> vertices);
ConvexRegion make_full_disc();

// Parse `{"kind":"disc","r":0.5}` and friends. Throws std::invalid_argument.
ConvexRegion parse_region(const std::string& json_text);

struct RegionConstants {
    double hbar0 = 0.0;
    double hbar1 = 0.0;
    double kappa = 0.0;
    double nu = 0.0;
    double lambda = 0.0;  // perimeter = 2*pi*hbar0
    double cD = 0.0;
    double c = 0.0;       // ((2-kn)/(1-kn)) e^gamma; +inf when kn == 1
    bool c_finite = true;
    std::optional<double> c_prime;  // symmetric regions only
    double kappa_lb = 0.0;
};

// Angular average of the largest value of Re((1-d)(alpha - e^{-i theta}))
// over d in D; increasing and convex in alpha.
double hbar(const ConvexRegion& region, double alpha);

// Largest alpha in [0,1] with hbar(alpha) <= 1 (bisection to 1e-9).
double kappa(const ConvexRegion& region);

// 1 - min Re over D = 1 + h_D(pi).
double nu(const ConvexRegion& region);

double kappa_lower_bound(const ConvexRegion& region);

RegionConstants region_constants(const ConvexRegion& region);

// Family-specific closed forms (roots_of_unity with odd m, disc, sector),
// used as cross-checks against the generic quadrature.
// Throws std::domain_error for other kinds.
double hbar_closed_form(const ConvexRegion& region, double alpha);

std::string constants_to_json(const ConvexRegion& region,
                              const RegionConstants& k);

// Solves atan2(sin th, cos th - alpha) = psi for th in [0, 2*pi); this is the
// angle where the integrand built on |alpha - e^{-i theta}| picks up the
// support kink at direction psi.
double kink_angle(double psi, double alpha);

} // namespace mvdecay
