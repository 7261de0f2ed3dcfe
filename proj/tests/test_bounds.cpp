#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mvdecay/bounds.hpp"
#include "mvdecay/constants.hpp"
#include "mvdecay/sieve.hpp"

using namespace mvdecay;

TEST_CASE("product-side envelope anchors and domain") {
    const double eg = std::exp(euler_gamma);
    CHECK(product_side_envelope(1.0) ==
          doctest::Approx(euler_gamma + 12.0 / 7).epsilon(1e-12));
    CHECK(product_side_envelope(eg) ==
          doctest::Approx(eg * 12.0 / 7).epsilon(1e-12));
    CHECK_THROWS_AS(product_side_envelope(0.0), std::invalid_argument);
    CHECK_THROWS_AS(product_side_envelope(eg + 0.1), std::invalid_argument);
}

TEST_CASE("distance envelope shapes") {
    // completely multiplicative variant decreases from M = 0 on
    double prev = distance_envelope(0.0, true);
    for (double M = 0.5; M <= 8.0; M += 0.5) {
        const double cur = distance_envelope(M, true);
        CHECK(cur < prev + 1e-15);
        prev = cur;
    }
    // the general variant peaks at M = 3/7
    const double peak = distance_envelope(3.0 / 7, false);
    CHECK(peak >= distance_envelope(0.0, false));
    CHECK(peak >= distance_envelope(1.0, false));
    CHECK(distance_envelope(0.2, false) <= peak);
}

TEST_CASE("prime product constant") {
    const double P = mertens_product_constant();
    CHECK(std::abs(P - 3.279577150983) <= 1e-8);
    CHECK(std::log(P) >= 8.0 / 7);
    CHECK(mertens_product_constant() == P);  // cached
}

TEST_CASE("prime-sum decay envelope") {
    CHECK(kappa_decay_envelope(make_segment_pm1(), 1.0) ==
          doctest::Approx(std::exp(-0.32867416320)).epsilon(1e-9));
    CHECK(kappa_decay_envelope(make_segment_pm1(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solution decay envelope: unit-interval branch and turnover") {
    const auto k01 = region_constants(make_segment01());
    CHECK(sigma_decay_envelope(k01, 0.0) ==
          doctest::Approx(std::exp(euler_gamma)).epsilon(1e-12));
    CHECK(sigma_decay_envelope(k01, 2.0) ==
          doctest::Approx(std::exp(euler_gamma - 2.0)).epsilon(1e-12));

    // wide-region envelopes decrease once past their turnover point
    const auto k_disc = region_constants(make_disc(0.7));
    double prev = sigma_decay_envelope(k_disc, 0.0);
    for (double M0 = 0.25; M0 <= 6.0; M0 += 0.25) {
        const double cur = sigma_decay_envelope(k_disc, M0);
        CHECK(cur <= prev + 1e-15);  // monotone from the start here
        prev = cur;
    }
    const auto k_roots = region_constants(make_roots_of_unity(3));
    const double turn = 1.30;  // measured turnover for this region
    CHECK(sigma_decay_envelope(k_roots, 0.5) >
          sigma_decay_envelope(k_roots, 0.0));  // rises before it
    prev = sigma_decay_envelope(k_roots, turn);
    for (double M0 = turn + 0.25; M0 <= 8.0; M0 += 0.25) {
        const double cur = sigma_decay_envelope(k_roots, M0);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("damped floor formula") {
    const auto k = region_constants(make_disc(0.7));
    const double M0 = 2.0, t = 0.01, u = 10.0;
    const double expected = k.kappa * M0 - k.kappa * k.nu * std::log(t * u) +
                            (1.0 - k.kappa * k.nu) * 0.0 + k.cD;
    // E1(0.1) enters the exact expression; recompute via the public value
    const double got = damped_functional_floor(k, M0, t, u);
    CHECK(got >= 0.0);
    CHECK(got >= expected - 1.0);  // E1(0.1) ~ 1.82; coarse sanity band
    CHECK(damped_functional_floor(k, 0.0, 1e3, 1.0) == 0.0);  // clamped
}

TEST_CASE("report construction and serialization") {
    const auto pass = make_report("demo", 1.0, 2.0, true, "ctx=1");
    CHECK(pass.verdict == BoundReport::Verdict::pass);
    CHECK(pass.slack == doctest::Approx(1.0));
    const auto fail = make_report("demo", 2.0, 1.0, true, "ctx=1");
    CHECK(fail.verdict == BoundReport::Verdict::fail);
    const auto rep = make_report("demo", 2.0, 1.0, false, "ctx=1");
    CHECK(rep.verdict == BoundReport::Verdict::report_only);

    const std::string line = pass.to_json_line();
    const auto p_name = line.find("\"name\"");
    const auto p_lhs = line.find("\"lhs\"");
    const auto p_rhs = line.find("\"rhs_main\"");
    const auto p_verdict = line.find("\"verdict\"");
    const auto p_fp = line.find("\"fingerprint\"");
    REQUIRE(p_name != std::string::npos);
    CHECK(p_name < p_lhs);
    CHECK(p_lhs < p_rhs);
    CHECK(p_rhs < p_verdict);
    CHECK(p_verdict < p_fp);
}

TEST_CASE("golden store lifecycle") {
    const std::string dir = "golden_test_tmp";
    const std::string name = "unit-golden", ctx = "x=1";
    auto missing = golden_lookup(dir, name, ctx);
    CHECK(!missing.found);
    golden_write(dir, name, ctx, 0.125, 1e-3);
    auto found = golden_lookup(dir, name, ctx);
    REQUIRE(found.found);
    CHECK(!found.corrupt);
    CHECK(found.value == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(found.tol == doctest::Approx(1e-3).epsilon(1e-12));

    auto ok = golden_report(dir, name, ctx, 0.1251);
    CHECK(ok.context.find(";drift=0") != std::string::npos);
    auto drifted = golden_report(dir, name, ctx, 0.2);
    CHECK(drifted.context.find(";drift=1") != std::string::npos);
    CHECK(drifted.verdict == BoundReport::Verdict::report_only);

    {
        std::ofstream corrupt(dir + "/" + golden_filename(name, ctx));
        corrupt << "not at all json";
    }
    auto bad = golden_lookup(dir, name, ctx);
    CHECK(bad.corrupt);
    auto bad_rep = golden_report(dir, name, ctx, 0.125);
    CHECK(bad_rep.context.find("golden=corrupt") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("mean-value product report") {
    const auto sieve = build_sieve(10000);
    const auto rep =
        mean_value_product_report(mult_one(), sieve, make_disc(0.7));
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.rhs_main > 1.0);
    CHECK(rep.verdict == BoundReport::Verdict::report_only);
    CHECK(rep.context.find("branch=") != std::string::npos);

    const auto liou =
        mean_value_product_report(mult_liouville(), sieve, make_segment_pm1());
    CHECK(liou.context.find("err_dominates=") != std::string::npos);
}

TEST_CASE("slow-variation reports") {
    const auto sieve = build_sieve(10000);
    const auto reps = lipschitz_report(mult_one(), sieve, {10, 100});
    bool twisted = false, untwisted = false, decay = false;
    for (const auto& r : reps) {
        twisted = twisted || r.name == "lipschitz-twisted";
        untwisted = untwisted || r.name == "lipschitz-untwisted";
        decay = decay || r.name == "mean-decay-at-twist";
        CHECK(!r.assertable);
    }
    CHECK(twisted);
    CHECK(untwisted);
    CHECK(decay);
    CHECK_THROWS_AS(lipschitz_report(mult_one(), sieve, {5000}),
                    std::invalid_argument);  // w beyond x/10
}
