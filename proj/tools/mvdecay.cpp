// Command-line front end: region constant tables, kernel equation solves,
// mean-value runs, bound reports, and the verification suite.
#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvdecay/bounds.hpp"
#include "mvdecay/chi.hpp"
#include "mvdecay/constants.hpp"
#include "mvdecay/functionals.hpp"
#include "mvdecay/io.hpp"
#include "mvdecay/multiplicative.hpp"
#include "mvdecay/region.hpp"
#include "mvdecay/sieve.hpp"
#include "mvdecay/verify.hpp"
#include "mvdecay/volterra.hpp"

using mvdecay::format_real;
using json = nlohmann::json;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --spec accepts inline JSON (starts with '{') or a file path.
std::string spec_text(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return spec;
    return read_file(spec);
}

// Output sink: file when --out is given, stdout otherwise.
struct Sink {
    std::ofstream file;
    bool to_file = false;
    explicit Sink(const std::string& out) {
        if (!out.empty()) {
            file.open(out, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot write " + out);
            to_file = true;
        }
    }
    std::ostream& os() { return to_file ? file : std::cout; }
};

void echo_header(std::ostream& os, const std::string& command,
                 const json& config, const std::string& tolerance) {
    os << "# mvdecay " << mvdecay::version_string << "\n";
    os << "# command: " << command << "\n";
    os << "# config: " << config.dump() << "\n";
    os << "# tolerance: " << tolerance << "\n";
}

json echo_object(const std::string& command, const json& config) {
    json j;
    j["tool"] = "mvdecay";
    j["version"] = mvdecay::version_string;
    j["command"] = command;
    j["config"] = config;
    return j;
}

cplx parse_complex_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        return cplx(std::stod(s), 0.0);
    return cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

mvdecay::ChiSpec chi_from_flags(const std::string& spec,
                                const std::string& preset,
                                const std::string& alpha, double U) {
    if (!spec.empty()) return mvdecay::parse_chi(spec_text(spec));
    if (preset == "dickman" || preset == "indicator01")
        return mvdecay::chi_indicator_01();
    if (preset == "all_one") return mvdecay::chi_all_one();
    if (preset == "rho_step")
        return mvdecay::chi_rho_step(parse_complex_pair(alpha));
    if (preset == "rotation")
        return mvdecay::chi_rotation(parse_complex_pair(alpha).real());
    if (preset == "three_phase") return mvdecay::chi_three_phase(U);
    throw std::invalid_argument("unknown chi preset: " + preset);
}

mvdecay::MultiplicativeSpec f_from_flags(const std::string& spec,
                                         const std::string& preset) {
    if (!spec.empty()) return mvdecay::parse_multiplicative(spec_text(spec));
    return mvdecay::parse_multiplicative("{\"preset\":\"" + preset + "\"}");
}

// ---- region-table ----------------------------------------------------

struct TableRow {
    std::string family;
    double param;
    mvdecay::ConvexRegion region;
};

int cmd_region_table(const std::string& family, std::vector<double> params,
                     const std::string& spec, const std::string& out,
                     const std::string& format) {
    std::vector<TableRow> rows;
    auto add_family = [&](const std::string& fam) {
        std::vector<double> ps = params;
        if (ps.empty()) {
            if (fam == "roots")
                ps = {2, 3, 4, 5, 6, 7, 8, 9, 10};
            else if (fam == "disc")
                ps = {0.45, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
            else if (fam == "sector")
                ps = {kPi / 4,       kPi / 3,       kPi / 2,  2 * kPi / 3,
                      3 * kPi / 4,   5 * kPi / 6,   9 * kPi / 10, 0.99 * kPi};
        }
        std::sort(ps.begin(), ps.end());
        for (double p : ps) {
            if (fam == "roots")
                rows.push_back({fam, p, mvdecay::make_roots_of_unity(int(p))});
            else if (fam == "disc")
                rows.push_back({fam, p, mvdecay::make_disc(p)});
            else
                rows.push_back({fam, p, mvdecay::make_sector(p)});
        }
    };
    if (family == "custom") {
        if (spec.empty())
            throw std::invalid_argument("--family custom requires --spec");
        rows.push_back({"custom", 0.0, mvdecay::parse_region(spec_text(spec))});
    } else if (family == "all") {
        add_family("roots");
        add_family("disc");
        add_family("sector");
    } else {
        add_family(family);
    }

    json config = {{"family", family}, {"format", format}};
    config["params"] = json::array();
    for (const auto& r : rows) config["params"].push_back(r.param);

    Sink sink(out);
    std::ostream& os = sink.os();
    if (format == "json") {
        json doc = echo_object("region-table", config);
        doc["rows"] = json::array();
        for (const auto& r : rows) {
            auto k = mvdecay::region_constants(r.region);
            json row = {{"family", r.family},
                        {"param", r.param},
                        {"region", r.region.describe()},
                        {"kappa", k.kappa},
                        {"nu", k.nu},
                        {"lambda", k.lambda},
                        {"cD", k.cD}};
            if (k.c_finite) row["c"] = k.c;
            if (k.c_prime) row["c_prime"] = *k.c_prime;
            doc["rows"].push_back(row);
        }
        os << doc.dump(1) << "\n";
    } else {
        echo_header(os, "region-table", config,
                    "kappa bisection 1e-9; quadrature 1e-11");
        os << "family,param,kappa,nu,lambda,cD,c,c_prime\n";
        for (const auto& r : rows) {
            auto k = mvdecay::region_constants(r.region);
            os << r.family << ',' << format_real(r.param) << ','
               << format_real(k.kappa) << ',' << format_real(k.nu) << ','
               << format_real(k.lambda) << ',' << format_real(k.cD) << ','
               << (k.c_finite ? format_real(k.c) : std::string("inf")) << ','
               << (k.c_prime ? format_real(*k.c_prime) : std::string()) << "\n";
        }
    }
    return 0;
}

// ---- sigma-solve / rho -----------------------------------------------

void emit_solution_csv(std::ostream& os, const mvdecay::SigmaSolution& sol) {
    os << "u,re_sigma,im_sigma,abs_sigma\n";
    const size_t stride =
        std::max<size_t>(1, size_t(std::llround((1.0 / 64) / sol.h)));
    for (size_t k = 0; k < sol.values.size(); k += stride) {
        const cplx v = sol.values[k];
        os << format_real(double(k) * sol.h) << ',' << format_real(v.real())
           << ',' << format_real(v.imag()) << ',' << format_real(std::abs(v))
           << "\n";
    }
}

void emit_sidecar(Sink& sink, const std::string& out, const json& side) {
    if (sink.to_file) {
        std::ofstream sf(out + ".json", std::ios::binary);
        sf << side.dump(1) << "\n";
    } else {
        sink.os() << "# sidecar: " << side.dump() << "\n";
    }
}

int cmd_sigma_solve(const std::string& spec, const std::string& preset,
                    const std::string& alpha, double U, double h,
                    const std::string& out) {
    auto chi = chi_from_flags(spec, preset, alpha, U);
    auto sol = mvdecay::solve_sigma(chi, U, h, true);
    auto fn = mvdecay::chi_functionals(chi, U);

    json config = {{"chi", chi.describe()}, {"U", U}, {"h", h}};
    Sink sink(out);
    echo_header(sink.os(), "sigma-solve", config,
                "second-order marching; est_error in sidecar");
    emit_solution_csv(sink.os(), sol);

    json side = {{"M0", fn.M0},
                 {"M", fn.M},
                 {"y_star", fn.y_star},
                 {"est_error", sol.est_error},
                 {"U", U},
                 {"h", h},
                 {"u_abs_sigma_at_U", U * std::abs(sol.at(U))}};
    emit_sidecar(sink, out, side);
    return 0;
}

int cmd_rho(const std::string& alpha, double U, double h,
            const std::string& out) {
    const cplx a = parse_complex_pair(alpha);
    auto sol = mvdecay::rho_alpha(a, U, h, true);

    json config = {{"alpha", {a.real(), a.imag()}}, {"U", U}, {"h", h}};
    Sink sink(out);
    echo_header(sink.os(), "rho", config,
                "fourth-order delay integration; est_error in sidecar");
    emit_solution_csv(sink.os(), sol);

    json side = {{"est_error", sol.est_error},
                 {"U", U},
                 {"h", h},
                 {"u_abs_rho_at_U", U * std::abs(sol.at(U))}};
    emit_sidecar(sink, out, side);
    return 0;
}

// ---- mean-value --------------------------------------------------------

int cmd_mean_value(const std::string& spec, const std::string& preset,
                   uint64_t x, double T, const std::string& out) {
    auto f = f_from_flags(spec, preset);
    auto sieve = mvdecay::build_sieve(x);

    std::vector<uint64_t> checkpoints;
    for (uint64_t c = 10; c < x; c *= 10) checkpoints.push_back(c);
    checkpoints.push_back(x);
    auto sums = mvdecay::partial_sums(f, sieve, checkpoints);

    json config = {{"f", f.label}, {"x", x}, {"T", T}};
    Sink sink(out);
    echo_header(sink.os(), "mean-value", config,
                "exact sieve sums; 12 significant digits");
    sink.os() << "x,re_S,im_S,abs_mean\n";
    for (size_t i = 0; i < checkpoints.size(); ++i) {
        const cplx S = sums[i];
        sink.os() << checkpoints[i] << ',' << format_real(S.real()) << ','
                  << format_real(S.imag()) << ','
                  << format_real(std::abs(S) / double(checkpoints[i])) << "\n";
    }

    const cplx theta = mvdecay::theta_product(f, x);
    auto hal = mvdecay::halasz_functionals(f, sieve, T);
    json side = {{"theta_re", theta.real()}, {"theta_im", theta.imag()},
                 {"M", hal.M},               {"y_min", hal.y_min},
                 {"L", hal.L},               {"y0", hal.y0}};
    emit_sidecar(sink, out, side);
    return 0;
}

// ---- bounds-report ------------------------------------------------------

int cmd_bounds_report(const std::string& spec, const std::string& preset,
                      const std::string& region_spec, uint64_t x,
                      std::vector<uint64_t> w_list, const std::string& out) {
    auto f = f_from_flags(spec, preset);
    auto region = mvdecay::parse_region(region_spec);
    auto sieve = mvdecay::build_sieve(x);
    if (w_list.empty()) w_list = {10};

    std::vector<mvdecay::BoundReport> entries;
    entries.push_back(mvdecay::mean_value_product_report(f, sieve, region));
    for (auto& r : mvdecay::lipschitz_report(f, sieve, w_list))
        entries.push_back(std::move(r));
    {
        // prime-sum decay rate for the region
        double sum = 0.0;
        for (uint64_t p : sieve.primes)
            sum += (1.0 - mvdecay::f_value(f, p, sieve).real()) / double(p);
        entries.push_back(mvdecay::make_report(
            "kappa-decay-envelope",
            std::abs(mvdecay::partial_sums(f, sieve, {x})[0]) / double(x),
            mvdecay::kappa_decay_envelope(region, sum), false,
            "f=" + f.label + ";x=" + std::to_string(x) +
                ";region=" + region.describe() + ";sum=" + format_real(sum)));
    }
    std::sort(entries.begin(), entries.end(),
              [](const mvdecay::BoundReport& a, const mvdecay::BoundReport& b) {
                  if (a.name != b.name) return a.name < b.name;
                  return mvdecay::fingerprint_hex(a.name + "|" + a.context) <
                         mvdecay::fingerprint_hex(b.name + "|" + b.context);
              });

    json config = {{"f", f.label},
                   {"region", region.describe()},
                   {"x", x},
                   {"w", w_list}};
    Sink sink(out);
    sink.os() << echo_object("bounds-report", config).dump() << "\n";
    for (const auto& e : entries) sink.os() << e.to_json_line() << "\n";
    return 0;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const std::string& profile, const std::string& golden,
               bool write_golden, double tamper, const std::string& out) {
    mvdecay::VerifyOptions opt;
    if (profile == "full")
        opt.profile = mvdecay::VerifyOptions::Profile::full;
    else if (profile != "quick")
        throw std::invalid_argument("--profile must be quick or full");
    opt.golden_dir = golden;
    opt.write_golden = write_golden;
    opt.tamper_kappa = tamper;

    auto res = mvdecay::verify_suite(opt);

    json config = {{"profile", profile},
                   {"golden", golden},
                   {"write_golden", write_golden},
                   {"tamper_kappa", tamper}};
    Sink sink(out);
    sink.os() << echo_object("verify", config).dump() << "\n";
    sink.os() << res.report;
    std::cerr << "verify " << profile << ": pass=" << res.n_pass
              << " fail=" << res.n_fail << " report-only=" << res.n_report
              << " exit=" << res.exit_code << "\n";
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decay laboratory for mean values of multiplicative functions"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("mvdecay ") +
                                          mvdecay::version_string);

    std::string spec, out, format = "csv", preset, alpha = "0,1";
    std::string family = "all", region_spec = "{\"kind\":\"segment_pm1\"}";
    std::string profile = "quick", golden = "golden";
    double U = 10.0, h = 1.0 / 1024, T = 4.0, tamper = 0.0;
    uint64_t x = 100000;
    std::vector<double> params;
    std::vector<uint64_t> w_list;
    bool write_golden = false;

    auto* rt = app.add_subcommand("region-table",
                                  "geometric constants for convex regions");
    rt->add_option("--family", family, "roots|disc|sector|all|custom");
    rt->add_option("--param", params, "family parameters (default: built-in table)");
    rt->add_option("--spec", spec, "region JSON (inline or path) for --family custom");
    rt->add_option("--out", out, "output path (default stdout)");
    rt->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* ss = app.add_subcommand("sigma-solve",
                                  "solve the delay convolution equation");
    ss->add_option("--spec", spec, "chi JSON (inline or path)");
    ss->add_option("--preset", preset,
                   "dickman|all_one|rho_step|rotation|three_phase");
    ss->add_option("--alpha", alpha, "complex parameter re,im for presets");
    ss->add_option("--U", U, "solve horizon (default 10)");
    ss->add_option("--h", h, "grid step (default 2^-10)");
    ss->add_option("--out", out, "output path (default stdout)");

    auto* rh = app.add_subcommand("rho", "delay equation with constant kernel");
    rh->add_option("--alpha", alpha, "complex kernel value re,im (default 0,1)");
    rh->add_option("--U", U, "solve horizon (default 10)");
    rh->add_option("--h", h, "grid step (default 1/64 for the integrator)");
    rh->add_option("--out", out, "output path (default stdout)");

    auto* mv = app.add_subcommand("mean-value",
                                  "partial sums and Euler-product functionals");
    mv->add_option("--spec", spec, "multiplicative-function JSON (inline or path)");
    mv->add_option("--preset", preset, "one|moebius|liouville (default liouville)");
    mv->add_option("--x", x, "sum limit (default 1e5)");
    mv->add_option("--T", T, "twist scan half-width (default 4)");
    mv->add_option("--out", out, "output path (default stdout)");

    auto* br = app.add_subcommand("bounds-report",
                                  "envelope comparisons as JSON lines");
    br->add_option("--spec", spec, "multiplicative-function JSON (inline or path)");
    br->add_option("--preset", preset, "one|moebius|liouville (default liouville)");
    br->add_option("--region", region_spec, "region JSON (default segment [-1,1])");
    br->add_option("--x", x, "sum limit (default 1e5)");
    br->add_option("--w", w_list, "difference scales (default 10)");
    br->add_option("--out", out, "output path (default stdout)");

    auto* vf = app.add_subcommand("verify", "run the verification suite");
    vf->add_option("--profile", profile, "quick|full (default quick)");
    vf->add_option("--golden", golden, "golden-file directory (default golden)");
    vf->add_flag("--write-golden", write_golden,
                 "refresh golden entries from this run");
    vf->add_option("--tamper-kappa", tamper,
                   "test hook: offset harness kappa (expect failures)");
    vf->add_option("--out", out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (rt->parsed())
            return cmd_region_table(family, params, spec, out, format);
        if (ss->parsed()) {
            if (spec.empty() && preset.empty()) preset = "dickman";
            return cmd_sigma_solve(spec, preset, alpha, U, h, out);
        }
        if (rh->parsed()) {
            if (!rh->count("--h")) h = 1.0 / 64;
            return cmd_rho(alpha, U, h, out);
        }
        if (mv->parsed()) {
            if (spec.empty() && preset.empty()) preset = "liouville";
            return cmd_mean_value(spec, preset, x, T, out);
        }
        if (br->parsed()) {
            if (spec.empty() && preset.empty()) preset = "liouville";
            return cmd_bounds_report(spec, preset, region_spec, x, w_list, out);
        }
        if (vf->parsed())
            return cmd_verify(profile, golden, write_golden, tamper, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
