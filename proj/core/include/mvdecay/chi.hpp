#pragma once
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mvdecay/prng.hpp"
#include "mvdecay/region.hpp"

namespace mvdecay {

// Convolution kernel chi: measurable, unit-disc valued, identically 1 on
// [0,1].  Two representations cover every kernel used here: piecewise
// constant after 1, and the smooth rotation kernel e^{i*alpha*t} after 1.
struct ChiSpec {
    enum class Rep { piecewise, rotation };
    Rep rep = Rep::piecewise;

    // piecewise: values[s] on (breaks[s], breaks[s+1]]; the last segment
    // extends to infinity. breaks is increasing with breaks[0] == 1.
    std::vector<double> breaks;
    std::vector<std::complex<double>> values;

    double rot_alpha = 0.0;  // rotation parameter

    std::optional<ConvexRegion> region_tag;  // certifies chi(t) in D
    std::string label;                       // canonical form (fingerprint input)

    std::complex<double> operator()(double t) const;  // left-continuous at breaks
    std::complex<double> value_left(size_t break_idx) const;
    std::complex<double> value_right(size_t break_idx) const;

    bool is_piecewise() const { return rep == Rep::piecewise; }

    // Structural checks: breaks increasing from 1, |values| <= 1, and (when
    // region-tagged) support-function membership of every value on a psi
    // grid. Throws std::invalid_argument on violation.
    void validate() const;

    std::string describe() const;
};

ChiSpec chi_all_one();
ChiSpec chi_indicator_01();                       // 0 beyond 1 (Dickman kernel)
ChiSpec chi_rho_step(std::complex<double> alpha); // alpha beyond 1, Re alpha < 1
ChiSpec chi_rotation(double alpha);               // e^{i alpha t} beyond 1
ChiSpec chi_three_phase(double u);                // 1 on [0,1], i on (1,u/2], 0 beyond
// Arbitrary piecewise kernel; breaks must start at 1.
ChiSpec chi_piecewise(std::vector<double> breaks,
                      std::vector<std::complex<double>> values);

// Parse `{"preset":"rho_step","alpha":[0,1]}` or
// `{"piecewise":{"breaks":[1,2.5,4],"values":[[0,1],[0.5,0.5],[0,0]]}}`,
// with an optional "region" object attached as region_tag.
// Throws std::invalid_argument.
ChiSpec parse_chi(const std::string& json_text);

// Seeded random piecewise kernel: n_segments values drawn uniformly from the
// given region (area-uniform for discs, hull-uniform otherwise) on
// breakpoints spread over (1, t_max]. Deterministic in seed.
ChiSpec chi_random_in_region(const ConvexRegion& region, uint64_t seed,
                             int n_segments = 4, double t_max = 5.0,
                             bool grid_aligned = true);

// One draw of a point of D: exact for the easy geometries, rejection
// against the support function otherwise.
std::complex<double> region_draw(const ConvexRegion& region, SplitMix64& rng);

} // namespace mvdecay
