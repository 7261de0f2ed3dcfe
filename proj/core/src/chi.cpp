#include "mvdecay/chi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mvdecay/constants.hpp"
#include "mvdecay/io.hpp"
#include "mvdecay/prng.hpp"

namespace mvdecay {

std::complex<double> ChiSpec::operator()(double t) const {
    if (t <= 1.0) return {1.0, 0.0};
    if (rep == Rep::rotation)
        return std::polar(1.0, rot_alpha * t);
    // segment s covers (breaks[s], breaks[s+1]]
    auto it = std::lower_bound(breaks.begin(), breaks.end(), t);
    size_t s = size_t(it - breaks.begin());
    if (s == 0) return {1.0, 0.0};  // t <= breaks[0] == 1
    return values[s - 1];
}

std::complex<double> ChiSpec::value_left(size_t i) const {
    return i == 0 ? std::complex<double>{1.0, 0.0} : values[i - 1];
}

std::complex<double> ChiSpec::value_right(size_t i) const { return values[i]; }

void ChiSpec::validate() const {
    if (rep == Rep::piecewise) {
        if (breaks.size() != values.size())
            throw std::invalid_argument("chi: breaks/values size mismatch");
        if (!breaks.empty() && std::abs(breaks[0] - 1.0) > 1e-12)
            throw std::invalid_argument("chi: first break must be 1");
        for (size_t i = 1; i < breaks.size(); ++i)
            if (breaks[i] <= breaks[i - 1] + 1e-12)
                throw std::invalid_argument("chi: breaks must be strictly increasing");
        for (const auto& v : values)
            if (std::abs(v) > 1.0 + 1e-12)
                throw std::invalid_argument("chi: value outside the unit disc: |" +
                                            format_complex(v) + "| > 1");
        if (region_tag) {
            const int n = 720;
            for (const auto& v : values)
                for (int j = 0; j < n; ++j) {
                    double psi = 2 * pi * j / n;
                    double lhs = v.real() * std::cos(psi) + v.imag() * std::sin(psi);
                    if (lhs > region_tag->support(psi) + 1e-12)
                        throw std::invalid_argument(
                            "chi: value " + format_complex(v) +
                            " outside the tagged region near psi=" + format_real(psi));
                }
        }
    } else {
        // |chi| == 1 throughout; a region tag must cover the whole circle
        if (region_tag) {
            const int n = 720;
            for (int j = 0; j < n; ++j) {
                double psi = 2 * pi * j / n;
                if (region_tag->support(psi) < 1.0 - 1e-12)
                    throw std::invalid_argument(
                        "chi: rotation kernel needs the full disc as region tag");
            }
        }
    }
}

std::string ChiSpec::describe() const {
    if (!label.empty()) return label;
    std::ostringstream os;
    if (rep == Rep::rotation) {
        os << "rotation(" << format_real(rot_alpha) << ")";
    } else {
        os << "piecewise(breaks=[";
        for (size_t i = 0; i < breaks.size(); ++i)
            os << (i ? "," : "") << format_real(breaks[i]);
        os << "];values=[";
        for (size_t i = 0; i < values.size(); ++i)
            os << (i ? "," : "") << format_complex(values[i]);
        os << "])";
    }
    return os.str();
}

ChiSpec chi_all_one() {
    ChiSpec c;
    c.label = "all_one";
    return c;
}

ChiSpec chi_indicator_01() {
    ChiSpec c;
    c.breaks = {1.0};
    c.values = {{0.0, 0.0}};
    c.label = "indicator_01";
    return c;
}

ChiSpec chi_rho_step(std::complex<double> alpha) {
    if (alpha.real() >= 1.0)
        throw std::invalid_argument("rho_step needs Re alpha < 1");
    ChiSpec c;
    c.breaks = {1.0};
    c.values = {alpha};
    c.label = "rho_step(" + format_complex(alpha) + ")";
    return c;
}

ChiSpec chi_rotation(double alpha) {
    ChiSpec c;
    c.rep = ChiSpec::Rep::rotation;
    c.rot_alpha = alpha;
    c.label = "rotation(" + format_real(alpha) + ")";
    return c;
}

ChiSpec chi_three_phase(double u) {
    if (u <= 2.0) throw std::invalid_argument("three_phase needs u > 2");
    ChiSpec c;
    c.breaks = {1.0, u / 2.0};
    c.values = {{0.0, 1.0}, {0.0, 0.0}};
    c.label = "three_phase(" + format_real(u) + ")";
    return c;
}

ChiSpec chi_piecewise(std::vector<double> breaks,
                      std::vector<std::complex<double>> values) {
    ChiSpec c;
    c.breaks = std::move(breaks);
    c.values = std::move(values);
    c.validate();
    return c;
}

ChiSpec parse_chi(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("chi spec is not valid JSON: ") + e.what());
    }
    ChiSpec c;
    if (j.contains("preset")) {
        const std::string p = j["preset"];
        if (p == "all_one") c = chi_all_one();
        else if (p == "indicator_01") c = chi_indicator_01();
        else if (p == "rho_step") {
            auto a = j.at("alpha");
            c = chi_rho_step({a.at(0).get<double>(), a.at(1).get<double>()});
        } else if (p == "rotation") c = chi_rotation(j.at("alpha").get<double>());
        else if (p == "three_phase") c = chi_three_phase(j.at("u").get<double>());
        else throw std::invalid_argument("unknown chi preset: \"" + p + "\"");
    } else if (j.contains("piecewise")) {
        auto pw = j["piecewise"];
        std::vector<double> breaks = pw.at("breaks").get<std::vector<double>>();
        std::vector<std::complex<double>> values;
        for (const auto& v : pw.at("values"))
            values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        c = chi_piecewise(std::move(breaks), std::move(values));
    } else {
        throw std::invalid_argument("chi spec needs \"preset\" or \"piecewise\"");
    }
    if (j.contains("region")) {
        c.region_tag = parse_region(j["region"].dump());
        c.validate();
    }
    return c;
}

// Draw a point of D, exactly for the families with easy geometry and by
// rejection against the support function otherwise.
std::complex<double> region_draw(const ConvexRegion& region, SplitMix64& rng) {
    switch (region.kind) {
        case RegionKind::point_one:
            return {1.0, 0.0};
        case RegionKind::segment01:
            return {rng.uniform(), 0.0};
        case RegionKind::segment_pm1:
            return {rng.uniform(-1.0, 1.0), 0.0};
        case RegionKind::full_disc: {
            double rad = std::sqrt(rng.uniform());
            double th = rng.uniform(0.0, 2 * pi);
            return std::polar(rad, th);
        }
        case RegionKind::disc: {
            double rad = region.r * std::sqrt(rng.uniform());
            double th = rng.uniform(0.0, 2 * pi);
            return std::complex<double>(1.0 - region.r, 0.0) + std::polar(rad, th);
        }
        case RegionKind::roots_of_unity:
        case RegionKind::polygon: {
            // Dirichlet(1,..,1) convex combination of the vertices
            std::vector<double> w(region.vertices.size());
            double tot = 0.0;
            for (auto& x : w) {
                x = -std::log(std::max(rng.uniform(), 1e-300));
                tot += x;
            }
            std::complex<double> z = 0.0;
            for (size_t i = 0; i < w.size(); ++i) z += w[i] / tot * region.vertices[i];
            return z;
        }
        case RegionKind::sector: {
            // rejection from the unit disc, inset so the grid test is safe
            const int n = 2048;
            for (int tries = 0; tries < 4096; ++tries) {
                double rad = std::sqrt(rng.uniform());
                double th = rng.uniform(0.0, 2 * pi);
                auto z = std::polar(rad, th);
                bool inside = true;
                for (int j = 0; j < n && inside; ++j) {
                    double psi = 2 * pi * j / n;
                    double d = z.real() * std::cos(psi) + z.imag() * std::sin(psi);
                    if (d > region.support(psi) - 4e-3) inside = false;
                }
                if (inside) return z;
            }
            return {1.0 - 1e-6, 0.0};  // degenerate sliver: fall back to 1
        }
    }
    return {0.0, 0.0};
}

ChiSpec chi_random_in_region(const ConvexRegion& region, uint64_t seed,
                             int n_segments, double t_max, bool grid_aligned) {
    SplitMix64 rng(seed ^ fingerprint(region.describe()));
    std::vector<double> breaks = {1.0};
    // interior breakpoints spread over (1, t_max)
    std::vector<double> cuts;
    for (int i = 1; i < n_segments; ++i)
        cuts.push_back(1.0 + (t_max - 1.0) * rng.uniform());
    std::sort(cuts.begin(), cuts.end());
    for (double c : cuts) {
        if (grid_aligned) c = std::round(c * 64.0) / 64.0;
        if (c > breaks.back() + 1.0 / 32 && c < t_max - 1.0 / 32) breaks.push_back(c);
    }
    std::vector<std::complex<double>> values;
    for (size_t i = 0; i < breaks.size(); ++i) values.push_back(region_draw(region, rng));
    ChiSpec c = chi_piecewise(std::move(breaks), std::move(values));
    c.region_tag = region;
    c.label = "random(" + region.describe() + ";seed=" + std::to_string(seed) +
              ";segments=" + std::to_string(n_segments) + ")";
    c.validate();
    return c;
}

} // namespace mvdecay
