#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

fs::path workdir() {
    static const fs::path d = [] {
        auto p = fs::temp_directory_path() / ("critlue_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

Run run(const std::string& args) {
    const std::string cmd = "cd '" + workdir().string() + "' && '" CRITLUE_CLI_PATH "' " + args + " 2>&1";
    FILE* f = ::popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string out;
    char buf[512];
    while (std::fgets(buf, sizeof buf, f)) out += buf;
    const int st = ::pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::vector<std::vector<std::string>> read_csv(const std::string& name) {
    std::ifstream in(workdir() / name);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
        rows.push_back(cols);
    }
    return rows;
}

std::string slurp(const std::string& name) {
    std::ifstream in(workdir() / name, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("tw2 grid") {
    const auto r = run("tw2 --s-min -5 --s-max 2 --step 0.5 --nodes 60 --out tw.csv");
    REQUIRE(r.code == 0);
    const auto rows = read_csv("tw.csv");
    REQUIRE(rows.size() == 16);
    CHECK(rows[0] == std::vector<std::string>{"t", "cdf", "convergence_estimate"});
    double prev = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double f = std::stod(rows[i][1]);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(fs::exists(workdir() / "tw.csv.manifest.json"));
}

TEST_CASE("spectrum rows") {
    const auto r = run("spectrum --ensemble lue --n-dim 100 --scaling critical --c 1 --samples 10 --seed 7");
    REQUIRE(r.code == 0);
    const auto rows = read_csv("spectrum.csv");
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == std::vector<std::string>{"sample_index", "lambda_min", "lambda_max", "kappa"});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) >= 1.0);
}

TEST_CASE("rhp-verify prints a small residual") {
    const auto r = run("rhp-verify --check sinf --delta 0.25 --out rh.csv");
    REQUIRE(r.code == 0);
    const auto pos = r.out.rfind("max residual ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 13)) <= 1e-10);
}

TEST_CASE("cg-halting writes a summary") {
    const auto r = run("cg-halting --n-dim 20 --samples 4 --seed 3 --out cg.csv");
    REQUIRE(r.code == 0);
    CHECK(read_csv("cg.csv").size() == 5);
    CHECK(slurp("cg.csv.summary.json").find("\"mean\"") != std::string::npos);
    REQUIRE(run("cg-halting --n-dim 20 --samples 4 --seed 3 --x0 zero --apply dense --out cg0.csv").code == 0);
    CHECK(slurp("cg0.csv.manifest.json").find("\"x0\": \"zero\"") != std::string::npos);
}

TEST_CASE("other subcommands run") {
    CHECK(run("gap --n-dim 10 --grid 0.9:1.1:0.1 --out gap.csv").code == 0);
    CHECK(read_csv("gap.csv").size() == 4);
    CHECK(run("kernel-limit --edge soft --n-dim 50 --grid -1:1:0.5 --out kl.csv").code == 0);
    CHECK(read_csv("kl.csv").size() == 26);
    CHECK(run("asymp-compare --n-dim 20 --grid 0.5:2:0.5 --out ac.csv").code == 0);
    CHECK(read_csv("ac.csv").size() == 5);
}

TEST_CASE("validation errors exit with 2") {
    CHECK(run("tw2 --bogus").code == 2);
    CHECK(run("nosuchcommand").code == 2);
    CHECK(run("spectrum --ensemble goe --samples 1").code == 2);
    CHECK(run("tw2 --s-min 3 --s-max 1").code == 2);
    CHECK(run("gap --n-dim 80").code == 2);
    CHECK(run("kernel-limit --grid 1:0:0.1").code == 2);
    CHECK(run("cg-halting --x0 one").code == 2);
    CHECK(run("cg-halting --apply sparse").code == 2);
}

TEST_CASE("identical configs give identical bytes; manifests replay") {
    REQUIRE(run("spectrum --n-dim 12 --samples 6 --seed 9 --out a.csv").code == 0);
    REQUIRE(run("spectrum --n-dim 12 --samples 6 --seed 9 --threads 1 --out b.csv").code == 0);
    CHECK(slurp("a.csv") == slurp("b.csv"));
    const std::string first = slurp("a.csv");
    fs::remove(workdir() / "a.csv");
    REQUIRE(run("--from-manifest a.csv.manifest.json").code == 0);
    CHECK(slurp("a.csv") == first);
    CHECK(slurp("a.csv.manifest.json").find("critlue 0.1.0") != std::string::npos);
}

}
