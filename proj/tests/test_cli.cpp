// End-to-end tests driving the installed binary. The binary path arrives as
// the first command-line argument (wired up by the build).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_binary;
int g_file_counter = 0;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string base = "/tmp/ggbessel_cli_" + std::to_string(++g_file_counter);
    const std::string cmd = g_binary + " " + args + " >" + base + ".out 2>" + base + ".err";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(base + ".out");
    r.err = slurp(base + ".err");
    std::remove((base + ".out").c_str());
    std::remove((base + ".err").c_str());
    return r;
}

std::vector<std::pair<double, double>> parse_curve(const std::string& csv) {
    std::vector<std::pair<double, double>> rows;
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        const auto comma = line.find(',');
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return rows;
}

}  // namespace

TEST_CASE("pathway-int: built-in constant integrand analytic value") {
    auto r = run_cli("pathway-int --f const --eta 2 --q 0 --a 1 --x 1 --deterministic");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"value\": 0.5") != std::string::npos);
    CHECK(r.out.find("\"schema_version\": 1") != std::string::npos);
    CHECK(r.out.find("abs_error_bound") != std::string::npos);
    CHECK(r.out.find("generated_at") == std::string::npos);
}

TEST_CASE("pdf table: delta = 0 column reproduces the plain gamma density") {
    auto r = run_cli("pdf --model gamma_bessel --params beta=2,b=1,delta=0 --grid 0:10:101");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_curve(r.out);
    REQUIRE(rows.size() == 101);
    CHECK(rows.front().first == 0.0);
    CHECK(rows.back().first == 10.0);
    for (const auto& [x, y] : rows) {
        const double want = x > 0.0 ? x * std::exp(-x) : 0.0;
        CHECK(std::abs(y - want) <= 1e-12 * std::max(1.0, want));
    }
}

TEST_CASE("cdf table: monotone, clipped to [0, 1], quadrature-backed models included") {
    auto r = run_cli("cdf --model qgb --params beta=1,b=1,delta=0,q=0 --grid 0:1:5");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_curve(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(std::abs(rows[2].second - 0.75) < 1e-8);  // F(1/2) of density 2(1-t)
    double prev = -1.0;
    for (const auto& [x, y] : rows) {
        CHECK(y >= prev);
        CHECK(y <= 1.0);
        prev = y;
    }
}

TEST_CASE("sample: header comment records the seed; reruns are byte-identical") {
    const std::string args = "sample --model gamma_bessel --params beta=2,b=1,delta=1 --n 50 --seed 9";
    auto r1 = run_cli(args);
    auto r2 = run_cli(args);
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.rfind("# seed=9", 0) == 0);
    auto r3 = run_cli("sample --model gamma_bessel --params beta=2,b=1,delta=1 --n 50 --seed 10");
    CHECK(r3.out != r1.out);
}

TEST_CASE("round trip: sample, ingest, compare; deterministic reruns byte-identical") {
    const std::string data = "/tmp/ggbessel_cli_roundtrip.csv";
    auto s = run_cli("sample --model gamma_bessel --params beta=2,b=1,delta=1 --n 1200 --seed 31 --output " + data);
    REQUIRE(s.exit_code == 0);

    const std::string cmp_args =
        "compare --input " + data + " --column 0 --no-header --models gamma,gamma_bessel --deterministic";
    auto c1 = run_cli(cmp_args);
    auto c2 = run_cli(cmp_args);
    REQUIRE(c1.exit_code == 0);
    CHECK(c1.out == c2.out);
    CHECK(c1.out.find("\"errors\": []") != std::string::npos);
    CHECK(c1.out.find("\"model\": \"gamma\"") != std::string::npos);
    CHECK(c1.out.find("\"model\": \"gamma_bessel\"") != std::string::npos);
    // the sample header comment is rejected with a row diagnostic, not an abort
    CHECK(c1.out.find("ingest_diagnostics") != std::string::npos);
    CHECK(c1.out.find("row 1") != std::string::npos);
    std::remove(data.c_str());
}

TEST_CASE("fit: JSON report carries provenance and fit block") {
    const std::string data = "/tmp/ggbessel_cli_fit.csv";
    run_cli("sample --model gamma --params beta=2,b=1 --n 400 --seed 5 --output " + data);
    auto r = run_cli("fit --input " + data + " --column 0 --no-header --model gamma --deterministic");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"n\": 400") != std::string::npos);
    CHECK(r.out.find("\"converged\": true") != std::string::npos);
    CHECK(r.out.find("ks_critical_5pct") != std::string::npos);
    CHECK(r.out.find(data) != std::string::npos);
    std::remove(data.c_str());
}

TEST_CASE("ks: fixed-parameter statistic against ingested data") {
    const std::string data = "/tmp/ggbessel_cli_ks.csv";
    run_cli("sample --model gamma --params beta=2,b=1 --n 500 --seed 77 --output " + data);
    auto r = run_cli("ks --input " + data +
                     " --column 0 --no-header --model gamma --params beta=2,b=1 --deterministic");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("ks_statistic") != std::string::npos);
    CHECK(r.out.find("\"reject_at_5pct\": false") != std::string::npos);
    std::remove(data.c_str());
}

TEST_CASE("validate: sign-scan report for negative delta") {
    auto ok = run_cli("validate --params beta=2,b=1,delta=-0.05 --deterministic");
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.out.find("\"valid\": true") != std::string::npos);
    auto bad = run_cli("validate --params beta=2,b=1,delta=-0.5 --deterministic");
    REQUIRE(bad.exit_code == 0);
    CHECK(bad.out.find("\"valid\": false") != std::string::npos);
    CHECK(bad.out.find("first_negative_at") != std::string::npos);
}

TEST_CASE("exit codes: usage 1, data 2, numeric 3; errors are JSON on stderr") {
    auto usage = run_cli("");
    CHECK(usage.exit_code == 1);
    CHECK(usage.err.find("\"error\"") != std::string::npos);
    CHECK(usage.err.find("\"type\":\"usage\"") != std::string::npos);

    auto missing = run_cli("pdf --model gamma --params beta=2 --grid 0:1:3");
    CHECK(missing.exit_code == 1);

    auto badparam = run_cli("pdf --model gamma --params beta=-1,b=1 --grid 0:1:3");
    CHECK(badparam.exit_code == 1);
    CHECK(badparam.err.find("invalid_params") != std::string::npos);

    auto nofile = run_cli("fit --input /nonexistent.csv --model gamma");
    CHECK(nofile.exit_code == 2);
    CHECK(nofile.err.find("\"type\":\"data\"") != std::string::npos);

    auto numeric = run_cli("pdf --model qgb --params beta=1,b=1,delta=0.5,q=2 --grid 0:1:3");
    CHECK(numeric.exit_code == 3);
    CHECK(numeric.err.find("\"type\":\"numeric\"") != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-ggbessel-binary> [doctest args]\n");
        return 1;
    }
    g_binary = argv[1];
    doctest::Context ctx(argc - 1, argv + 1);
    return ctx.run();
}
