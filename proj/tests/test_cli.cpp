// Drives the installed command-line binary end to end. The binary path
// arrives as the last command-line argument (wired up by the test harness).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    const std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int rc = pclose(p);
    r.exit_code = rc < 0 ? -1 : WEXITSTATUS(rc);
    return r;
}

std::vector<std::string> data_lines(const std::string& out) {
    std::vector<std::string> lines;
    std::istringstream ss(out);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

// column of a comma-separated row
std::string field(const std::string& row, size_t idx) {
    size_t start = 0;
    for (size_t i = 0; i < idx; ++i) {
        start = row.find(',', start);
        REQUIRE(start != std::string::npos);
        ++start;
    }
    const size_t end = row.find(',', start);
    return row.substr(start, end == std::string::npos ? end : end - start);
}

} // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("--version").out.find("mvdecay") != std::string::npos);
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("sigma-solve --bogus 3").exit_code == 2);
    CHECK(run("sigma-solve --preset nope").exit_code == 2);
    CHECK(run("region-table --format yaml").exit_code == 2);
    CHECK(run("sigma-solve --U 0.5").exit_code == 2);   // solver precondition
    CHECK(run("region-table --family custom --spec '{\"kind\":\"disc\",\"r\":2}'")
              .exit_code == 2);
}

TEST_CASE("every output embeds tool version and configuration") {
    for (const char* args :
         {"region-table --family disc --param 0.7", "sigma-solve --U 2",
          "rho --U 2", "mean-value --x 1000"}) {
        const auto r = run(args);
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("# mvdecay 0.1.0") != std::string::npos);
        CHECK(r.out.find("# config: {") != std::string::npos);
        CHECK(r.out.find("# tolerance:") != std::string::npos);
    }
}

TEST_CASE("smooth-density table is right at u = 2") {
    const auto r = run("sigma-solve --U 3");
    REQUIRE(r.exit_code == 0);
    bool seen = false;
    for (const auto& row : data_lines(r.out)) {
        if (row.rfind("2,", 0) == 0) {
            const double a = std::strtod(field(row, 3).c_str(), nullptr);
            CHECK(std::abs(a - (1.0 - std::log(2.0))) <= 1e-5);
            seen = true;
        }
    }
    CHECK(seen);
}

TEST_CASE("identity kernel stays at one") {
    const auto r = run("sigma-solve --preset all_one --U 4");
    REQUIRE(r.exit_code == 0);
    size_t rows = 0;
    for (const auto& row : data_lines(r.out)) {
        if (row.rfind("u,", 0) == 0) continue;  // header
        CHECK(field(row, 3) == "1");
        ++rows;
    }
    CHECK(rows >= 4 * 64);
}

TEST_CASE("region table rows carry the decay constants") {
    const auto r = run("region-table --family disc --param 0.7");
    REQUIRE(r.exit_code == 0);
    const auto rows = data_lines(r.out);
    REQUIRE(rows.size() == 2);  // header + one row
    const double kap = std::strtod(field(rows[1], 2).c_str(), nullptr);
    CHECK(std::abs(kap - 0.390142) <= 1e-5);
}

TEST_CASE("csv output is deterministic across runs") {
    const auto a = run("region-table --family sector");
    const auto b = run("region-table --family sector");
    CHECK(a.out == b.out);
    const auto c = run("sigma-solve --preset rho_step --alpha 0,1 --U 5");
    const auto d = run("sigma-solve --preset rho_step --alpha 0,1 --U 5");
    CHECK(c.out == d.out);
}

TEST_CASE("mean-value checkpoints the decades") {
    const auto r = run("mean-value --preset liouville --x 1000");
    REQUIRE(r.exit_code == 0);
    const auto rows = data_lines(r.out);
    REQUIRE(rows.size() == 4);  // header + 10,100,1000
    CHECK(rows[1].rfind("10,", 0) == 0);
    CHECK(rows[3].rfind("1000,", 0) == 0);
    CHECK(field(rows[3], 1) == "-14");
    CHECK(r.out.find("# sidecar: {") != std::string::npos);
}

TEST_CASE("bounds report emits sorted JSON lines") {
    const auto r = run("bounds-report --x 1000 --w 10 --w 100");
    REQUIRE(r.exit_code == 0);
    const auto rows = data_lines(r.out);
    REQUIRE(rows.size() >= 5);
    CHECK(rows[0].find("\"command\":\"bounds-report\"") != std::string::npos);
    std::string prev;
    for (size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].front() == '{');
        CHECK(rows[i].find("\"fingerprint\"") != std::string::npos);
        const auto name_at = rows[i].find("\"name\":\"");
        REQUIRE(name_at != std::string::npos);
        const auto name_end = rows[i].find('"', name_at + 8);
        const std::string name =
            rows[i].substr(name_at + 8, name_end - name_at - 8);
        if (!prev.empty()) CHECK(prev <= name);
        prev = name;
    }
}

TEST_CASE("json region table parses and matches the csv numbers") {
    const auto r = run("region-table --family roots --param 3 --format json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"kappa\": 0.1672155") != std::string::npos);
    CHECK(r.out.find("\"rows\"") != std::string::npos);
}

TEST_CASE("file output with sidecar") {
    const std::string base = "cli_test_out.csv";
    const auto r = run("sigma-solve --U 2 --out " + base);
    REQUIRE(r.exit_code == 0);
    std::ifstream main_f(base), side_f(base + ".json");
    CHECK(main_f.good());
    CHECK(side_f.good());
    std::ostringstream side;
    side << side_f.rdbuf();
    CHECK(side.str().find("\"est_error\"") != std::string::npos);
    std::remove(base.c_str());
    std::remove((base + ".json").c_str());
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli [doctest args] <cli-binary>\n");
        return 1;
    }
    g_cli = argv[argc - 1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv);
    return ctx.run();
}
