#include "mvdecay/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mvdecay/constants.hpp"
#include "mvdecay/io.hpp"
#include "mvdecay/special.hpp"
#include "mvdecay/summation.hpp"

#include "json.hpp"

namespace mvdecay {

namespace {

using cplx = std::complex<double>;

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if ((unsigned char)c < 0x20) continue;  // labels never need control chars
        out.push_back(c);
    }
    return out;
}

const char* verdict_name(BoundReport::Verdict v) {
    switch (v) {
        case BoundReport::Verdict::pass: return "pass";
        case BoundReport::Verdict::fail: return "fail";
        default: return "report-only";
    }
}

} // namespace

std::string BoundReport::to_json_line() const {
    std::ostringstream os;
    os << "{\"name\":\"" << json_escape(name) << "\""
       << ",\"lhs\":" << format_real(lhs)
       << ",\"rhs_main\":" << format_real(rhs_main)
       << ",\"slack\":" << format_real(slack)
       << ",\"assertable\":" << (assertable ? "true" : "false")
       << ",\"verdict\":\"" << verdict_name(verdict) << "\""
       << ",\"context\":\"" << json_escape(context) << "\""
       << ",\"fingerprint\":\"" << fingerprint_hex(name + "|" + context) << "\"}";
    return os.str();
}

BoundReport make_report(const std::string& name, double lhs, double rhs_main,
                        bool assertable, const std::string& context, double tol) {
    BoundReport r;
    r.name = name;
    r.lhs = lhs;
    r.rhs_main = rhs_main;
    r.slack = rhs_main - lhs;
    r.assertable = assertable;
    r.context = context;
    r.verdict = assertable ? (r.slack >= -tol ? BoundReport::Verdict::pass
                                              : BoundReport::Verdict::fail)
                           : BoundReport::Verdict::report_only;
    return r;
}

double product_side_envelope(double L) {
    const double eg = std::exp(euler_gamma);
    if (!(L > 0.0) || L > eg * (1.0 + 1e-12))
        throw std::invalid_argument("product_side_envelope: need 0 < L <= e^gamma");
    return L * (std::log(eg / L) + 12.0 / 7.0);
}

double mertens_product_constant() {
    static const double P = [] {
        // partial product over p <= 1e7; the remainder sum_{p>X} 2/(p(p-1))
        // is within rounding of 2*int_X^inf dt/(t^2 log t) = 2 E1(log X)
        const uint64_t X = 10000000;
        SieveTable sieve = build_sieve(X);
        PairwiseAccumulator<double> acc;
        for (uint64_t p : sieve.primes)
            acc.add(std::log1p(2.0 / (double(p) * double(p - 1))));
        return std::exp(acc.total() + 2.0 * expint_e1(std::log(double(X))));
    }();
    return P;
}

double distance_envelope(double M, bool completely_multiplicative) {
    if (M < 0.0) throw std::invalid_argument("distance_envelope: M >= 0 required");
    if (completely_multiplicative)
        return (M + 12.0 / 7.0) * std::exp(euler_gamma - M);
    return mertens_product_constant() * (M + 4.0 / 7.0) * std::exp(euler_gamma - M);
}

double kappa_decay_envelope(const ConvexRegion& region, double sum_one_minus_re) {
    if (sum_one_minus_re < 0.0)
        throw std::invalid_argument("kappa_decay_envelope: sum >= 0 required");
    return std::exp(-kappa(region) * sum_one_minus_re);
}

double sigma_decay_envelope(const RegionConstants& constants, double M0) {
    if (M0 < 0.0) throw std::invalid_argument("sigma_decay_envelope: M0 >= 0 required");
    const double kn = constants.kappa * constants.nu;
    if (std::abs(kn - 1.0) < 1e-9) return std::exp(euler_gamma - M0);
    return (2.0 - kn) / (1.0 - kn) *
               std::exp(-constants.kappa * M0 - constants.cD +
                        euler_gamma * (1.0 - kn)) -
           kn / (1.0 - kn) *
               std::exp(-M0 / constants.nu - constants.cD / constants.kappa);
}

double damped_functional_floor(const RegionConstants& constants, double M0,
                               double t, double u) {
    if (!(t > 0.0) || !(u > 0.0) || M0 < 0.0)
        throw std::invalid_argument("damped_functional_floor: t, u > 0 and M0 >= 0");
    const double kn = constants.kappa * constants.nu;
    return std::max(0.0, constants.kappa * M0 - kn * std::log(t * u) +
                             (1.0 - kn) * expint_e1(t * u) + constants.cD);
}

namespace {

void check_membership_sampled(const MultiplicativeSpec& f, const SieveTable& sieve,
                              const ConvexRegion& region) {
    const size_t n = sieve.primes.size();
    const size_t stride = std::max<size_t>(1, n / 200);
    for (size_t i = 0; i < n; i += stride) {
        const uint64_t p = sieve.primes[i];
        const cplx z = f.rule(p, 1);
        for (int j = 0; j < 720; ++j) {
            const double psi = 2.0 * pi * j / 720.0;
            if (z.real() * std::cos(psi) + z.imag() * std::sin(psi) >
                region.support(psi) + 1e-9)
                throw std::invalid_argument(
                    "mean_value_product_report: f(p) outside the region at p=" +
                    std::to_string(p));
        }
    }
}

} // namespace

BoundReport mean_value_product_report(const MultiplicativeSpec& f,
                                      const SieveTable& sieve,
                                      const ConvexRegion& region) {
    check_membership_sampled(f, sieve, region);
    const uint64_t x = sieve.limit;
    const double lx = std::log(double(x));
    const auto y = std::max<uint64_t>(
        2, (uint64_t)std::llround(std::exp(std::pow(lx, 2.0 / 3.0))));
    const RegionConstants constants = region_constants(region);
    const double kn = constants.kappa * constants.nu;

    const double lhs = std::abs(partial_sums(f, sieve, {x})[0]) / double(x);

    double main = 0.0, err = 0.0;
    std::string branch;
    if (std::abs(kn - 1.0) <= 1e-9) {
        main = std::exp(euler_gamma) * std::abs(theta_product(f, x));
        err = 1.0 / lx;
        branch = "unit";
    } else {
        PairwiseAccumulator<double> between, upto;
        for (uint64_t p : sieve.primes) {
            const double term = (1.0 - f.rule(p, 1).real()) / double(p);
            upto.add(term);
            if (p > y) between.add(term);
        }
        main = std::abs(theta_product(f, y)) * (2.0 - kn) / (1.0 - kn) *
               std::exp(-constants.kappa * between.total() - constants.cD +
                        euler_gamma * (1.0 - kn));
        err = std::exp(std::sqrt(2.0 * std::log(lx) * upto.total())) /
              std::cbrt(lx);
        branch = "two-term";
    }
    std::ostringstream ctx;
    ctx << "f=" << f.label << ";x=" << x << ";y=" << y
        << ";region=" << region.describe() << ";branch=" << branch
        << ";err_term=" << format_real(err)
        << ";err_dominates=" << (err > main ? 1 : 0);
    return make_report("mean-value-product", lhs, main, false, ctx.str());
}

std::vector<BoundReport> lipschitz_report(const MultiplicativeSpec& f,
                                          const SieveTable& sieve,
                                          const std::vector<uint64_t>& w_list) {
    const uint64_t x = sieve.limit;
    for (uint64_t w : w_list)
        if (w < 1 || w > x / 10)
            throw std::invalid_argument("lipschitz_report: need 1 <= w <= x/10");

    const double T = 4.0;
    const HalaszFunctionals hal = halasz_functionals(f, sieve, T);
    const double y0 = hal.y0;

    std::vector<uint64_t> cps;
    for (uint64_t w : w_list) cps.push_back(x / w);
    cps.push_back(x);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());

    ComplexAccumulator plain, twisted;
    std::vector<cplx> plain_at(cps.size()), twisted_at(cps.size());
    size_t next = 0;
    for (uint64_t n = 1; n <= x; ++n) {
        const cplx fv = f_value(f, n, sieve);
        plain.add(fv);
        twisted.add(fv * std::polar(1.0, -y0 * std::log(double(n))));
        while (next < cps.size() && cps[next] == n) {
            plain_at[next] = plain.total();
            twisted_at[next] = twisted.total();
            ++next;
        }
    }
    auto at = [&](const std::vector<cplx>& v, uint64_t c) {
        return v[size_t(std::lower_bound(cps.begin(), cps.end(), c) - cps.begin())];
    };

    const double lx = std::log(double(x));
    std::vector<BoundReport> out;
    for (uint64_t w : w_list) {
        const uint64_t xw = x / w;
        std::ostringstream ctx;
        ctx << "f=" << f.label << ";x=" << x << ";w=" << w
            << ";y0=" << format_real(y0) << ";T=" << format_real(T);
        const double lhs4 = std::abs(at(twisted_at, x) / double(x) -
                                     double(w) / double(x) * at(twisted_at, xw));
        const double rhs4 = std::pow(std::log(2.0 * double(w)) / lx, 1.0 - 2.0 / pi);
        out.push_back(make_report("lipschitz-twisted", lhs4, rhs4, false, ctx.str()));

        const double lhs3 = std::abs(std::abs(at(plain_at, x)) / double(x) -
                                     double(w) / double(x) * std::abs(at(plain_at, xw)));
        const double rhs3 = std::log(lx) / std::pow(lx, 2.0 - std::sqrt(3.0));
        out.push_back(make_report("lipschitz-untwisted", lhs3, rhs3, false, ctx.str()));
    }
    {
        std::ostringstream ctx;
        ctx << "f=" << f.label << ";x=" << x << ";y0=" << format_real(y0)
            << ";T=" << format_real(T);
        out.push_back(make_report("mean-decay-at-twist",
                                  std::abs(at(plain_at, x)) / double(x),
                                  1.0 / (1.0 + std::abs(y0)), false, ctx.str()));
    }
    return out;
}

std::string golden_filename(const std::string& name, const std::string& context) {
    std::string major(version_string);
    major = major.substr(0, major.find('.'));
    return name + "-" + fingerprint_hex(context) + "-v" + major + ".json";
}

GoldenEntry golden_lookup(const std::string& dir, const std::string& name,
                          const std::string& context) {
    GoldenEntry e;
    std::ifstream in(dir + "/" + golden_filename(name, context));
    if (!in) return e;
    e.found = true;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        e.value = j.at("value").get<double>();
        e.tol = j.at("tol").get<double>();
    } catch (const std::exception&) {
        e.corrupt = true;
    }
    return e;
}

void golden_write(const std::string& dir, const std::string& name,
                  const std::string& context, double value, double tol) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + golden_filename(name, context));
    out << "{\"name\":\"" << json_escape(name) << "\",\"context\":\""
        << json_escape(context) << "\",\"value\":" << format_real(value)
        << ",\"tol\":" << format_real(tol) << "}\n";
}

BoundReport golden_report(const std::string& dir, const std::string& name,
                          const std::string& context, double measured) {
    const GoldenEntry e = golden_lookup(dir, name, context);
    std::string ctx = context;
    double rhs = measured;
    if (!e.found) {
        ctx += ";golden=missing";
    } else if (e.corrupt) {
        ctx += ";golden=corrupt";
    } else {
        rhs = e.value + e.tol;
        ctx += ";golden=" + format_real(e.value) + ";tol=" + format_real(e.tol) +
               ";drift=" + (std::abs(measured - e.value) > e.tol ? "1" : "0");
    }
    return make_report(name, measured, rhs, false, ctx);
}

} // namespace mvdecay
