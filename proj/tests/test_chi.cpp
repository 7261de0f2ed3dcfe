#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "mvdecay/chi.hpp"

using namespace mvdecay;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("preset kernels take their defining values") {
    const auto one = chi_all_one();
    CHECK(one(0.5) == cplx(1.0));
    CHECK(one(7.3) == cplx(1.0));

    const auto ind = chi_indicator_01();
    CHECK(ind(0.3) == cplx(1.0));
    CHECK(ind(1.0) == cplx(1.0));  // left-continuous at the break
    CHECK(ind(1.0 + 1e-12) == cplx(0.0));
    CHECK(ind(5.0) == cplx(0.0));

    const auto step = chi_rho_step(cplx(0, 1));
    CHECK(step(0.9) == cplx(1.0));
    CHECK(step(2.0) == cplx(0, 1));

    const auto rot = chi_rotation(1.0);
    CHECK(rot(0.5) == cplx(1.0));
    CHECK(std::abs(rot(3.0) - std::exp(cplx(0, 3.0))) <= 1e-15);

    const auto tp = chi_three_phase(10.0);
    CHECK(tp(1.0) == cplx(1.0));
    CHECK(tp(3.0) == cplx(0, 1));
    CHECK(tp(5.0) == cplx(0, 1));  // boundary u/2 belongs to the middle phase
    CHECK(tp(5.0 + 1e-12) == cplx(0.0));
}

TEST_CASE("piecewise kernels are left-continuous with one-sided accessors") {
    const auto chi = chi_piecewise({1.0, 2.5}, {cplx(0.5, 0.5), cplx(0, -1)});
    CHECK(chi(1.0) == cplx(1.0));
    CHECK(chi(2.5) == cplx(0.5, 0.5));
    CHECK(chi(2.5 + 1e-12) == cplx(0, -1));
    CHECK(chi.value_left(1) == cplx(0.5, 0.5));
    CHECK(chi.value_right(1) == cplx(0, -1));
}

TEST_CASE("validate rejects malformed kernels") {
    CHECK_THROWS_AS(chi_piecewise({2.0}, {cplx(0.5)}).validate(),
                    std::invalid_argument);  // breaks must start at 1
    CHECK_THROWS_AS(chi_piecewise({1.0, 1.0}, {cplx(0.5), cplx(0.25)}).validate(),
                    std::invalid_argument);  // strictly increasing
    CHECK_THROWS_AS(chi_piecewise({1.0}, {cplx(1.5, 0)}).validate(),
                    std::invalid_argument);  // outside the unit disc
    ChiSpec tagged = chi_piecewise({1.0}, {cplx(-0.9, 0)});
    tagged.region_tag = make_disc(0.7);  // disc(0.7) stops at Re = -0.4
    CHECK_THROWS_AS(tagged.validate(), std::invalid_argument);
    tagged.region_tag = make_segment_pm1();
    CHECK_NOTHROW(tagged.validate());
}

TEST_CASE("kernel JSON parsing") {
    const auto step = parse_chi("{\"preset\":\"rho_step\",\"alpha\":[0,1]}");
    CHECK(step(2.0) == cplx(0, 1));
    const auto pw = parse_chi(
        "{\"piecewise\":{\"breaks\":[1,2.5,4],\"values\":[[0,1],[0.5,0.5],[0,0]]}}");
    CHECK(pw(2.0) == cplx(0, 1));
    CHECK(pw(3.0) == cplx(0.5, 0.5));
    CHECK(pw(9.0) == cplx(0.0));
    const auto tagged = parse_chi(
        "{\"piecewise\":{\"breaks\":[1],\"values\":[[0.5,0]]},"
        "\"region\":{\"kind\":\"disc\",\"r\":0.7}}");
    REQUIRE(tagged.region_tag.has_value());
    CHECK(tagged.region_tag->kind == RegionKind::disc);
    CHECK_THROWS_AS(parse_chi("{\"preset\":\"nope\"}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_chi("[1,2,3]"), std::invalid_argument);
}

TEST_CASE("random kernels are deterministic, in-region, and seed-sensitive") {
    const auto region = make_disc(0.7);
    const auto a = chi_random_in_region(region, 42, 6, 8.0);
    const auto b = chi_random_in_region(region, 42, 6, 8.0);
    REQUIRE(a.breaks.size() == b.breaks.size());
    for (size_t i = 0; i < a.values.size(); ++i)
        CHECK(a.values[i] == b.values[i]);
    CHECK(a.describe() == b.describe());

    const auto c = chi_random_in_region(region, 43, 6, 8.0);
    bool differs = false;
    for (size_t i = 0; i < std::min(a.values.size(), c.values.size()); ++i)
        differs = differs || a.values[i] != c.values[i];
    CHECK(differs);

    CHECK(a.breaks.front() == 1.0);
    for (size_t i = 0; i + 1 < a.breaks.size(); ++i)
        CHECK(a.breaks[i] < a.breaks[i + 1]);
    CHECK(a.breaks.back() <= 8.0 + 1e-12);
    CHECK_NOTHROW(a.validate());  // includes region membership of every value

    // membership double-checked against the support function directly
    for (const auto& v : a.values) {
        for (double psi = 0.0; psi < 2 * kPi; psi += 0.1) {
            const double proj = (v * std::exp(cplx(0, -psi))).real();
            CHECK(proj <= region.support(psi) + 1e-9);
        }
    }
}

TEST_CASE("random draws cover different regions") {
    SplitMix64 rng(7);
    for (const auto& region :
         {make_segment01(), make_roots_of_unity(3), make_sector(kPi / 2)}) {
        for (int i = 0; i < 50; ++i) {
            const cplx d = region_draw(region, rng);
            for (double psi = 0.0; psi < 2 * kPi; psi += 0.05)
                CHECK((d * std::exp(cplx(0, -psi))).real() <=
                      region.support(psi) + 1e-9);
        }
    }
}

TEST_CASE("describe distinguishes kernels") {
    CHECK(chi_all_one().describe() != chi_indicator_01().describe());
    CHECK(chi_rho_step(cplx(0, 1)).describe() !=
          chi_rho_step(cplx(0.5, 0)).describe());
    CHECK(chi_rotation(1.0).describe() != chi_rotation(2.0).describe());
}
