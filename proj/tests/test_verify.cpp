#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "mvdecay/verify.hpp"

using namespace mvdecay;

#ifndef MVDECAY_GOLDEN_DIR
#define MVDECAY_GOLDEN_DIR "golden"
#endif

TEST_CASE("quick verification suite is green and deterministic") {
    VerifyOptions opt;
    opt.golden_dir = MVDECAY_GOLDEN_DIR;
    const auto a = verify_suite(opt);
    CHECK(a.exit_code == 0);
    CHECK(a.n_fail == 0);
    CHECK(a.n_pass >= 40);
    CHECK(a.n_report >= 20);
    CHECK(!a.report.empty());
    CHECK(a.entries.size() == a.n_pass + a.n_fail + a.n_report);

    const auto b = verify_suite(opt);
    CHECK(a.report == b.report);
}

TEST_CASE("a corrupted decay constant is caught by the suite") {
    VerifyOptions opt;
    opt.golden_dir = MVDECAY_GOLDEN_DIR;
    opt.tamper_kappa = 1e-3;
    const auto r = verify_suite(opt);
    CHECK(r.exit_code == 1);
    CHECK(r.n_fail == 2);  // the constants-valid gate, once per tampered region
    size_t gate_fails = 0;
    for (const auto& e : r.entries)
        if (e.name == "decay-constants-valid" &&
            e.verdict == BoundReport::Verdict::fail)
            ++gate_fails;
    CHECK(gate_fails == 2);
}
