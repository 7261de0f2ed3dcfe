#pragma once
#include <string>
#include <vector>

#include "mvdecay/multiplicative.hpp"
#include "mvdecay/region.hpp"

namespace mvdecay {

// One evaluated inequality. `assertable` marks constant-free bounds that may
// fail a suite; envelope comparisons with unknown absolute constants stay
// report-only and never affect exit status.
struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs_main = 0.0;
    double slack = 0.0;  // rhs_main - lhs
    bool assertable = false;
    enum class Verdict { pass, fail, report_only } verdict = Verdict::report_only;
    std::string context;  // canonical input description (fingerprint source)

    std::string to_json_line() const;  // one JSON object, pinned field order
};

// Build a report; assertable entries get pass/fail from slack >= -tol.
BoundReport make_report(const std::string& name, double lhs, double rhs_main,
                        bool assertable, const std::string& context,
                        double tol = 1e-9);

// L(log(e^gamma/L) + 12/7); requires 0 < L <= e^gamma.
double product_side_envelope(double L);

// (M + 12/7)e^{gamma-M} for completely multiplicative f, else
// P(M + 4/7)e^{gamma-M} with P = prod_p(1 + 2/(p(p-1))).
double distance_envelope(double M, bool completely_multiplicative);

// P above: partial product over p <= 1e7 with an integral tail estimate for
// the remainder; computed once and cached. log P >= 8/7.
double mertens_product_constant();

// exp(-kappa(D) * sum); the prime-sum decay rate of a Hall-type bound.
double kappa_decay_envelope(const ConvexRegion& region, double sum_one_minus_re);

// Decay bound for |sigma(u)| in terms of M0 = int_0^u (1-Re chi)/v dv:
// two-exponential form for kappa*nu < 1, e^{gamma-M0} when kappa*nu = 1.
double sigma_decay_envelope(const RegionConstants& constants, double M0);

// Lower bound for the damped functional M(t):
// max(0, kappa*M0 - kappa*nu*log(tu) + (1-kappa*nu)E1(tu) + C(D)).
double damped_functional_floor(const RegionConstants& constants, double M0,
                               double t, double u);

// Mean-value bound through the Euler product at y = round(exp((log x)^{2/3})):
// lhs = |S(x)|/x, rhs_main the product-side main term; the ineffective
// additive error is echoed in the context and flagged when it dominates.
BoundReport mean_value_product_report(const MultiplicativeSpec& f,
                                      const SieveTable& sieve,
                                      const ConvexRegion& region);

// Slow-variation reports: twisted mean differences at scale w against
// (log 2w / log x)^{1-2/pi}, untwisted differences against
// log log x/(log x)^{2-sqrt(3)}, and |S(x)|/x against 1/(1+|y0|).
std::vector<BoundReport> lipschitz_report(const MultiplicativeSpec& f,
                                          const SieveTable& sieve,
                                          const std::vector<uint64_t>& w_list);

// Golden-file store: measured envelope constants, keyed by
// (name, fingerprint(context), major version). Corrupt or missing entries
// are reported, never fatal.
struct GoldenEntry {
    double value = 0.0;
    double tol = 0.0;
    bool found = false;
    bool corrupt = false;
};
std::string golden_filename(const std::string& name, const std::string& context);
GoldenEntry golden_lookup(const std::string& dir, const std::string& name,
                          const std::string& context);
void golden_write(const std::string& dir, const std::string& name,
                  const std::string& context, double value, double tol);

// Compare a measured value against its golden entry; always report-only.
// Missing/corrupt/out-of-tolerance states are spelled out in the context.
BoundReport golden_report(const std::string& dir, const std::string& name,
                          const std::string& context, double measured);

} // namespace mvdecay
