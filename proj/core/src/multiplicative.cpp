#include "mvdecay/multiplicative.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mvdecay/constants.hpp"
#include "mvdecay/io.hpp"
#include "mvdecay/prng.hpp"
#include "mvdecay/summation.hpp"

#include "json.hpp"

namespace mvdecay {

namespace {

using cplx = std::complex<double>;

// z^k by repeated multiplication; k is small (series are cut at p^k > 1e30).
cplx ipow(cplx z, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

cplx read_complex(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("multiplicative spec: complex values are [re,im] pairs");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

constexpr double series_cap = 1e30;  // prime-power series stop past this
constexpr uint64_t mix_salt = 0x9e3779b97f4a7c15ull;

} // namespace

MultiplicativeSpec mult_one() {
    return {[](uint64_t, int) { return cplx(1.0, 0.0); }, true, "one"};
}

MultiplicativeSpec mult_moebius() {
    return {[](uint64_t, int k) { return cplx(k == 1 ? -1.0 : 0.0, 0.0); },
            false, "moebius"};
}

MultiplicativeSpec mult_liouville() {
    return {[](uint64_t, int k) { return cplx(k % 2 ? -1.0 : 1.0, 0.0); },
            true, "liouville"};
}

MultiplicativeSpec mult_nt_power(double alpha) {
    auto rule = [alpha](uint64_t p, int k) {
        return std::polar(1.0, double(k) * alpha * std::log(double(p)));
    };
    return {rule, true, "nt_power(" + format_real(alpha) + ")"};
}

MultiplicativeSpec mult_char_table(uint32_t modulus, std::vector<cplx> table) {
    if (modulus == 0 || table.size() != modulus)
        throw std::invalid_argument("char_table: table must have `modulus` entries");
    for (auto v : table)
        if (std::abs(v) > 1 + 1e-12)
            throw std::invalid_argument("char_table: values must lie in the unit disc");
    std::string lab = "char(" + std::to_string(modulus);
    for (auto v : table) lab += ";" + format_complex(v);
    lab += ")";
    auto rule = [modulus, table = std::move(table)](uint64_t p, int k) {
        return ipow(table[p % modulus], k);
    };
    return {rule, true, std::move(lab)};
}

MultiplicativeSpec mult_random_in_region(const ConvexRegion& region, uint64_t seed) {
    // A fixed 16-point palette keyed to the region alone, so every seed draws
    // its prime values from the same subset and runs stay comparable.
    SplitMix64 palette_rng(fingerprint(region.describe()));
    std::vector<cplx> palette(16);
    for (auto& z : palette) z = region_draw(region, palette_rng);
    auto rule = [seed, palette = std::move(palette)](uint64_t p, int k) {
        SplitMix64 g(seed ^ (p * mix_salt));
        return ipow(palette[g.next() % 16], k);
    };
    return {rule, true,
            "random(" + region.describe() + ";seed=" + std::to_string(seed) + ")"};
}

MultiplicativeSpec mult_threshold(uint64_t y, cplx value) {
    if (std::abs(value) > 1 + 1e-12)
        throw std::invalid_argument("threshold: value must lie in the unit disc");
    auto rule = [y, value](uint64_t p, int k) {
        return p <= y ? cplx(1.0, 0.0) : ipow(value, k);
    };
    return {rule, true,
            "threshold(" + std::to_string(y) + ";" + format_complex(value) + ")"};
}

MultiplicativeSpec parse_multiplicative(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("multiplicative spec: ") + e.what());
    }
    if (!j.is_object() || !j.contains("preset"))
        throw std::invalid_argument("multiplicative spec: expected {\"preset\":...}");
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "one") return mult_one();
    if (preset == "moebius") return mult_moebius();
    if (preset == "liouville") return mult_liouville();
    if (preset == "nt_power") return mult_nt_power(j.at("alpha").get<double>());
    if (preset == "char_table") {
        auto modulus = j.at("modulus").get<uint32_t>();
        std::vector<cplx> table;
        for (const auto& e : j.at("table")) table.push_back(read_complex(e));
        return mult_char_table(modulus, std::move(table));
    }
    if (preset == "random_in_region") {
        auto region = parse_region(j.at("region").dump());
        return mult_random_in_region(region, j.at("seed").get<uint64_t>());
    }
    if (preset == "threshold")
        return mult_threshold(j.at("y").get<uint64_t>(),
                              read_complex(j.at("value")));
    throw std::invalid_argument("multiplicative spec: unknown preset '" + preset + "'");
}

cplx f_value(const MultiplicativeSpec& f, uint64_t n, const SieveTable& sieve) {
    if (n == 0) throw std::invalid_argument("f_value: n >= 1 required");
    if (n > sieve.limit) throw std::out_of_range("f_value: n exceeds sieve limit");
    cplx val = 1.0;
    while (n > 1) {
        uint64_t p = sieve.spf[n];
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        val *= f.rule(p, k);
        if (val == cplx(0.0, 0.0)) return val;
    }
    return val;
}

std::vector<cplx> partial_sums(const MultiplicativeSpec& f, const SieveTable& sieve,
                               const std::vector<uint64_t>& checkpoints) {
    if (checkpoints.empty()) return {};
    for (size_t i = 0; i + 1 < checkpoints.size(); ++i)
        if (checkpoints[i] >= checkpoints[i + 1])
            throw std::invalid_argument("partial_sums: checkpoints must be ascending");
    if (checkpoints.front() == 0 || checkpoints.back() > sieve.limit)
        throw std::invalid_argument("partial_sums: checkpoints must lie in [1, sieve limit]");
    std::vector<cplx> out;
    out.reserve(checkpoints.size());
    ComplexAccumulator acc;
    size_t next = 0;
    for (uint64_t n = 1; n <= checkpoints.back(); ++n) {
        acc.add(f_value(f, n, sieve));
        while (next < checkpoints.size() && checkpoints[next] == n) {
            out.push_back(acc.total());
            ++next;
        }
    }
    return out;
}

namespace {

// 1 + sum_k f(p^k) p^{-ks}, cut at p^k > 1e30 or k > kmax.
cplx prime_factor(const MultiplicativeSpec& f, uint64_t p, cplx s, int kmax) {
    const double lp = std::log(double(p));
    cplx sum = 1.0;
    for (int k = 1; k <= kmax && double(k) * lp <= std::log(series_cap); ++k) {
        cplx term = f.rule(p, k) * std::exp(-double(k) * s * lp);
        sum += term;
        if (std::abs(term) < 1e-18 && k >= 3) break;
    }
    return sum;
}

} // namespace

cplx theta_product(const MultiplicativeSpec& f, uint64_t x, int kmax) {
    if (x < 2) return 1.0;
    SieveTable sieve = build_sieve(x);
    cplx prod = 1.0;
    for (uint64_t p : sieve.primes)
        prod *= prime_factor(f, p, cplx(1.0, 0.0), kmax) * (1.0 - 1.0 / double(p));
    return prod;
}

cplx euler_F(const MultiplicativeSpec& f, uint64_t x, cplx s, int kmax) {
    if (s.real() < 1.0 - 1e-12)
        throw std::invalid_argument("euler_F: Re s >= 1 required");
    if (x < 2) return 1.0;
    SieveTable sieve = build_sieve(x);
    cplx prod = 1.0;
    for (uint64_t p : sieve.primes) prod *= prime_factor(f, p, s, kmax);
    return prod;
}

namespace {

// golden-section minimum of fn on [a,b]; deterministic fixed iteration count
double golden_scalar_min(const std::function<double(double)>& fn, double a, double b,
                         double* minval) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = fn(x2);
        }
    }
    double xm = 0.5 * (a + b), fm = fn(xm);
    if (f1 < fm) {
        xm = x1;
        fm = f1;
    }
    if (f2 < fm) {
        xm = x2;
        fm = f2;
    }
    if (minval) *minval = fm;
    return xm;
}

struct ScanGrids {
    double delta = 0.0;
    std::vector<double> y;
    std::vector<double> M;     // prime-sum distance functional
    std::vector<double> logF;  // log|F(1+iy)|, k <= 3 truncation beyond p = 50
};

ScanGrids halasz_scan(const MultiplicativeSpec& f, const SieveTable& sieve,
                      double ymax, double delta_target) {
    ScanGrids g;
    size_t half = (size_t)std::ceil(ymax / delta_target);
    g.delta = ymax / double(half);
    size_t n = 2 * half + 1;
    g.y.resize(n);
    for (size_t j = 0; j < n; ++j) g.y[j] = (double(j) - double(half)) * g.delta;
    g.M.assign(n, 0.0);
    g.logF.assign(n, 0.0);
    for (uint64_t p : sieve.primes) {
        const double lp = std::log(double(p));
        const cplx step = std::polar(1.0, -g.delta * lp);
        cplx z = std::polar(1.0, -g.y[0] * lp);
        const cplx fp = f.rule(p, 1);
        const double invp = 1.0 / double(p);
        if (p <= 50) {
            // small primes carry weight at every k: take the factor exactly
            for (size_t j = 0; j < n; ++j, z *= step) {
                g.M[j] += (1.0 - (fp * z).real()) * invp;
                cplx w = 0.0, pw = 1.0;
                for (int k = 1; double(k) * lp <= std::log(series_cap) && k <= 100; ++k) {
                    pw *= z * invp;
                    w += f.rule(p, k) * pw;
                    if (std::abs(pw) < 1e-18) break;
                }
                g.logF[j] += std::log(std::abs(1.0 + w));
            }
        } else {
            // |w| < 0.021: three series terms and a cubic log leave < 1e-7,
            // plenty to locate the right grid cell for refinement
            const cplx c1 = fp * invp;
            const cplx c2 = f.rule(p, 2) * (invp * invp);
            const cplx c3 = f.rule(p, 3) * (invp * invp * invp);
            for (size_t j = 0; j < n; ++j, z *= step) {
                g.M[j] += (1.0 - (fp * z).real()) * invp;
                const cplx z2 = z * z;
                const cplx w = c1 * z + c2 * z2 + c3 * (z2 * z);
                const cplx w2 = w * w;
                g.logF[j] += w.real() - 0.5 * w2.real() + (w2 * w).real() / 3.0;
            }
        }
    }
    return g;
}

} // namespace

HalaszFunctionals halasz_functionals(const MultiplicativeSpec& f,
                                     const SieveTable& sieve, double T) {
    if (!(T > 0)) throw std::invalid_argument("halasz_functionals: T > 0 required");
    if (sieve.limit < 3)
        throw std::invalid_argument("halasz_functionals: sieve limit >= 3 required");
    const double lx = std::log(double(sieve.limit));
    const double ymax = 2.0 * T;
    const double delta0 = std::min(0.01, 1.0 / (4.0 * lx));

    auto exact_M = [&](double y) {
        PairwiseAccumulator<double> acc;
        for (uint64_t p : sieve.primes) {
            const double lp = std::log(double(p));
            acc.add((1.0 - (f.rule(p, 1) * std::polar(1.0, -y * lp)).real()) / double(p));
        }
        return acc.total();
    };
    auto exact_neg_logF = [&](double y) {
        PairwiseAccumulator<double> acc;
        for (uint64_t p : sieve.primes) {
            const double lp = std::log(double(p));
            const double invp = 1.0 / double(p);
            const cplx z = std::polar(1.0, -y * lp);
            cplx w = 0.0, pw = 1.0;
            for (int k = 1; double(k) * lp <= std::log(series_cap) && k <= 100; ++k) {
                pw *= z * invp;
                w += f.rule(p, k) * pw;
                if (std::abs(pw) < 1e-18) break;
            }
            acc.add(std::log(std::abs(1.0 + w)));
        }
        return -acc.total();
    };

    // locate the best grid cell, then polish inside it with the exact
    // evaluator; a polish that pins to an interior cell edge means the grid
    // picked the wrong cell
    auto refine = [&](const ScanGrids& g, const std::vector<double>& vals,
                      const std::function<double(double)>& exact, double& arg,
                      double& val) {
        size_t jb = 0;
        for (size_t j = 1; j < vals.size(); ++j)
            if (vals[j] < vals[jb]) jb = j;
        double lo = jb == 0 ? g.y.front() : g.y[jb - 1];
        double hi = jb + 1 >= g.y.size() ? g.y.back() : g.y[jb + 1];
        double fb = 0.0;
        double yb = golden_scalar_min(exact, lo, hi, &fb);
        const double edge = 1e-6 * g.delta;
        bool pinned = (jb > 0 && yb - lo < edge) ||
                      (jb + 1 < g.y.size() && hi - yb < edge);
        arg = yb;
        val = fb;
        return !pinned;
    };

    for (int attempt = 0; attempt < 2; ++attempt) {
        ScanGrids g = halasz_scan(f, sieve, ymax, attempt == 0 ? delta0 : delta0 / 2.0);
        std::vector<double> neg(g.logF.size());
        for (size_t j = 0; j < neg.size(); ++j) neg[j] = -g.logF[j];
        HalaszFunctionals out;
        double mval = 0.0, nlf = 0.0;
        bool ok_m = refine(g, g.M, exact_M, out.y_min, mval);
        bool ok_l = refine(g, neg, exact_neg_logF, out.y0, nlf);
        if (!ok_m || !ok_l) continue;
        out.M = mval;
        out.L = std::exp(-nlf) / lx;
        out.y_grid = std::move(g.y);
        out.M_vals = std::move(g.M);
        out.logF_vals = std::move(g.logF);
        return out;
    }
    throw std::runtime_error("halasz_functionals: refinement escaped its grid cell twice");
}

ChiSpec chi_from_f(const MultiplicativeSpec& f, uint64_t y, const SieveTable& sieve,
                   double u, double du) {
    if (y < 2) throw std::invalid_argument("chi_from_f: y >= 2 required");
    if (!(du > 0) || u < 1.0 + du - 1e-12)
        throw std::invalid_argument("chi_from_f: need u >= 1 + du");
    double steps = (u - 1.0) / du;
    auto S = (size_t)std::llround(steps);
    if (std::abs(steps - double(S)) > 1e-9 || S == 0)
        throw std::invalid_argument("chi_from_f: (u-1)/du must be integral");
    if (std::pow(double(y), u) > double(sieve.limit) * (1.0 + 1e-9) + 0.5)
        throw std::invalid_argument("chi_from_f: y^u exceeds sieve limit");

    // integer prime thresholds for the sample points v_s = 1 + s*du
    std::vector<uint64_t> cut(S);
    for (size_t s = 0; s < S; ++s) {
        double t = std::pow(double(y), 1.0 + double(s + 1) * du);
        cut[s] = (uint64_t)std::floor(t + 1e-9);
    }

    ComplexAccumulator acc;
    PairwiseAccumulator<double> th;
    std::vector<cplx> vals(S);
    size_t s = 0;
    for (uint64_t p : sieve.primes) {
        if (p <= y && std::abs(f.rule(p, 1) - cplx(1.0, 0.0)) > 1e-12)
            throw std::invalid_argument("chi_from_f: f must be 1 on primes <= y");
        while (s < S && p > cut[s]) {
            vals[s] = acc.total() / th.total();
            ++s;
        }
        if (s == S) break;
        const double lp = std::log(double(p));
        acc.add(f.rule(p, 1) * lp);
        th.add(lp);
    }
    while (s < S) {
        vals[s] = acc.total() / th.total();
        ++s;
    }
    for (auto& v : vals) {
        double m = std::abs(v);
        if (m > 1.0 + 1e-12)
            throw std::runtime_error("chi_from_f: sample escaped the unit disc");
        if (m > 1.0) v /= m;
    }

    std::vector<double> breaks(S);
    for (size_t i = 0; i < S; ++i) breaks[i] = 1.0 + double(i) * du;
    ChiSpec c = chi_piecewise(std::move(breaks), std::move(vals));
    c.label = "chi_from_f(" + f.label + ";y=" + std::to_string(y) + ";u=" +
              format_real(u) + ")";
    return c;
}

EulerSplit euler_split(const MultiplicativeSpec& f, const SieveTable& sieve,
                       uint64_t y) {
    if (y < 1 || y > sieve.limit)
        throw std::invalid_argument("euler_split: y in [1, sieve limit] required");
    if (double(y) * double(y) > double(sieve.limit) * (1.0 + 1e-9))
        throw std::invalid_argument("euler_split: y <= sqrt(x) required");
    EulerSplit out;
    out.theta_y = theta_product(f, y);
    auto base = f.rule;  // copy: g must stay valid independent of f
    MultiplicativeSpec g{[base, y](uint64_t p, int k) {
                             return p <= y ? cplx(1.0, 0.0) : ipow(base(p, 1), k);
                         },
                         true, "split(" + f.label + ";y=" + std::to_string(y) + ")"};
    const uint64_t x = sieve.limit;
    out.mean_f = partial_sums(f, sieve, {x})[0] / double(x);
    out.mean_g = partial_sums(g, sieve, {x})[0] / double(x);
    out.residual = std::abs(out.mean_f - out.theta_y * out.mean_g);
    return out;
}

TwistShift twist_shift(const MultiplicativeSpec& f, const SieveTable& sieve,
                       double alpha) {
    const uint64_t x = sieve.limit;
    if (std::abs(alpha) > std::log(double(x)))
        throw std::invalid_argument("twist_shift: |alpha| <= log x required");
    ComplexAccumulator plain, twisted;
    for (uint64_t n = 1; n <= x; ++n) {
        const cplx fv = f_value(f, n, sieve);
        plain.add(fv);
        twisted.add(fv * std::polar(1.0, alpha * std::log(double(n))));
    }
    TwistShift out;
    out.lhs = twisted.total();
    out.rhs = std::polar(1.0, alpha * std::log(double(x))) /
              cplx(1.0, alpha) * plain.total();
    out.residual = std::abs(out.lhs - out.rhs) / double(x);
    return out;
}

} // namespace mvdecay
