#pragma once
#include <string>
#include <vector>

#include "mvdecay/bounds.hpp"

namespace mvdecay {

struct VerifyOptions {
    enum class Profile { quick, full };
    Profile profile = Profile::quick;
    // quick: reduced seed counts, x = 1e5, u <= 10 — a couple of minutes.
    // full: the complete suite, including the reference tables.
    std::string golden_dir = "golden";
    double tamper_kappa = 0.0;  // test hook: offset added to harness kappa
    bool write_golden = false;  // refresh golden entries from this run
};

struct VerifyResult {
    int exit_code = 0;  // 1 iff an assertable entry failed
    size_t n_pass = 0, n_fail = 0, n_report = 0;
    std::string report;  // JSON lines, sorted by (name, fingerprint)
    std::vector<BoundReport> entries;
};

VerifyResult verify_suite(const VerifyOptions& options);

} // namespace mvdecay
