#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using lbtest::rad;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "lumenbell");
    std::ostringstream out, err;
    const int code = lumenbell::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "lumenbell_cli_test" / name;
    fs::remove_all(p);
    fs::create_directories(p.parent_path());
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_matrix(const fs::path& p) {
    std::ifstream is(p);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        rows.emplace_back();
        double v;
        while (ls >> v) rows.back().push_back(v);
    }
    return rows;
}

std::string bench_file(const char* name) { return std::string(LUMENBELL_BENCH_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run({"--help"}).code == 0);
    for (const char* sub : {"generate", "sweep", "bench", "chsh"}) {
        const Result r = run({sub, "--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("Usage") != std::string::npos);
    }
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"sweep"}).code == 2);  // --state is required
    CHECK(run({"sweep", "--state", "bogus"}).code == 2);
    CHECK(run({"sweep", "--state", "hh_vv", "--engine", "quantum"}).code == 2);
}

TEST_CASE("generate hr_vl writes the maps") {
    const fs::path dir = scratch("gen_hrvl");
    const Result r = run({"generate", "--state", "hr_vl", "--grid-n", "64", "--out", dir.string()});
    REQUIRE(r.code == 0);
    for (const char* stem : {"intensity", "s1", "s2", "s3", "dop"}) {
        CHECK(fs::exists(dir / (std::string(stem) + ".ppm")));
        CHECK(fs::exists(dir / (std::string(stem) + ".txt")));
        CHECK(slurp(dir / (std::string(stem) + ".ppm")).rfind("P6\n64 64\n255\n", 0) == 0);
    }
    // Donut: dark on axis, bright on the ring.
    const auto s0 = read_matrix(dir / "intensity.txt");
    REQUIRE(s0.size() == 64);
    double peak = 0.0;
    for (const auto& row : s0) {
        REQUIRE(row.size() == 64);
        for (double v : row) peak = std::max(peak, v);
    }
    CHECK(s0[31][31] < 0.1 * peak);  // nearest cell to the axis is at r = 0.11
    CHECK(r.out.find("fidelity with") != std::string::npos);
}

TEST_CASE("generate --simulate runs the Sagnac generator") {
    const fs::path dir = scratch("gen_sim");
    const Result r = run({"generate", "--state", "hr_vl", "--simulate", "--grid-n", "64", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Sagnac") != std::string::npos);
    // The phase plate leaves the Gaussian intensity profile in its own plane.
    const auto s0 = read_matrix(dir / "intensity.txt");
    double peak = 0.0;
    for (const auto& row : s0) {
        for (double v : row) peak = std::max(peak, v);
    }
    CHECK(s0[31][31] > 0.9 * peak);
    const auto pos = r.out.find("within |l|=1 subspace = ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 24)) >= 0.999);
}

TEST_CASE("generate scalar_hr has unit DoP everywhere") {
    const fs::path dir = scratch("gen_scalar");
    REQUIRE(run({"generate", "--state", "scalar_hr", "--grid-n", "32", "--out", dir.string()}).code == 0);
    for (const auto& row : read_matrix(dir / "dop.txt")) {
        for (double v : row) CHECK(std::abs(v - 1.0) < 1e-9);
    }
}

TEST_CASE("generate hh_vv --ideal reports a depolarized global state") {
    const fs::path dir = scratch("gen_hhvv");
    const Result r = run({"generate", "--state", "hh_vv", "--ideal", "--grid-n", "64", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto pos = r.out.find("global DoP = ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 13)) <= 1e-6);
}

TEST_CASE("generate usage errors") {
    const fs::path dir = scratch("gen_err");
    CHECK(run({"generate", "--state", "hr_vl", "--ideal", "--simulate", "--out", dir.string()}).code == 2);
    CHECK(run({"generate", "--state", "hh_vv", "--simulate", "--out", dir.string()}).code == 2);
    // Output "directory" is an existing file.
    fs::create_directories(dir);
    std::ofstream(dir / "file") << "x";
    const Result r = run({"generate", "--state", "hr_vl", "--grid-n", "32", "--out", (dir / "file").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("output directory") != std::string::npos);
    CHECK(run({"generate", "--state", "hr_vl", "--grid-n", "15", "--out", dir.string()}).code == 2);
}

TEST_CASE("sweep hh_vv") {
    const fs::path dir = scratch("sweep_hh");
    fs::create_directories(dir);
    const Result r = run({"sweep", "--state", "hh_vv", "--out", (dir / "s.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("single-parameter S(theta): violated, max |S| = 2.828427") != std::string::npos);
    CHECK(r.out.find("four-setting CHSH: violated, max |S| = 2.828427") != std::string::npos);

    std::istringstream csv(slurp(dir / "s.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "theta_deg,i_hH,i_vH,i_hV,i_vV,C,S");
    int rows = 0;
    while (std::getline(csv, line)) {
        std::istringstream ls(line);
        std::vector<double> v;
        std::string cell;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        REQUIRE(v.size() == 7);
        CHECK(std::abs(v[5] - std::cos(2 * rad(v[0]))) < 1e-11);
        ++rows;
    }
    CHECK(rows == 73);

    // Deterministic output.
    REQUIRE(run({"sweep", "--state", "hh_vv", "--out", (dir / "t.csv").string()}).code == 0);
    CHECK(slurp(dir / "s.csv") == slurp(dir / "t.csv"));
}

TEST_CASE("sweep scalar and depolarized states") {
    const fs::path dir = scratch("sweep_other");
    fs::create_directories(dir);
    const Result s = run({"sweep", "--state", "scalar_hr", "--out", (dir / "a.csv").string()});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("single-parameter S(theta): not violated") != std::string::npos);
    CHECK(s.out.find("four-setting CHSH: not violated") != std::string::npos);

    const Result d = run({"sweep", "--state", "hr_vl", "--purity", "0.5", "--out", (dir / "b.csv").string()});
    REQUIRE(d.code == 0);
    CHECK(d.out.find("four-setting CHSH: not violated") != std::string::npos);
    std::istringstream csv(slurp(dir / "b.csv"));
    std::string line;
    std::getline(csv, line);
    while (std::getline(csv, line)) {
        std::istringstream ls(line);
        std::vector<double> v;
        std::string cell;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        CHECK(std::abs(v[5] - 0.5 * std::sin(2 * rad(v[0]))) < 1e-11);
    }

    const Result hr = run({"sweep", "--state", "hr_vl", "--out", (dir / "c.csv").string()});
    CHECK(hr.out.find("exceeds the Tsirelson bound") != std::string::npos);
}

TEST_CASE("sweep usage errors") {
    const fs::path dir = scratch("sweep_err");
    fs::create_directories(dir);
    CHECK(run({"sweep", "--state", "hh_vv", "--engine", "field", "--purity", "0.5", "--out", (dir / "a.csv").string()}).code == 2);
    CHECK(run({"sweep", "--state", "hh_vv", "--purity", "1.5", "--out", (dir / "a.csv").string()}).code == 2);
    const Result r = run({"sweep", "--state", "hh_vv", "--step", "7", "--strict-3theta", "--out", (dir / "a.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("not on the angle grid") != std::string::npos);
    CHECK(run({"sweep", "--state", "hh_vv", "--out", (dir / "missing" / "x" / "a.csv").string()}).code == 2);
}

TEST_CASE("sweep with the field engine") {
    const fs::path dir = scratch("sweep_field");
    fs::create_directories(dir);
    const Result r = run({"sweep", "--state", "hh_vv", "--engine", "field", "--grid-n", "64", "--step", "22.5",
                          "--out", (dir / "f.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("tolerance 1e-03") != std::string::npos);
}

TEST_CASE("bench") {
    const fs::path dir = scratch("bench");
    const Result g = run({"bench", bench_file("fig3.bench"), "--grid-n", "64", "--out", dir.string()});
    REQUIRE(g.code == 0);
    CHECK(g.out.find("tap out: power 1, fidelity with") != std::string::npos);
    CHECK(fs::exists(dir / "out.field"));
    CHECK(fs::exists(dir / "out_intensity.ppm"));

    const Result m = run({"bench", bench_file("fig4.bench"), "--theta", "30", "--grid-n", "64", "--out", dir.string()});
    REQUIRE(m.code == 0);
    CHECK(fs::exists(dir / "port1.field"));
    CHECK(fs::exists(dir / "port2.field"));
    const auto pos = m.out.find("input - sum = ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::abs(std::stod(m.out.substr(pos + 14))) < 1e-9);

    const Result s = run({"bench", bench_file("fig4.bench"), "--set", "theta=-45+75", "--grid-n", "64", "--out", (dir / "set").string()});
    REQUIRE(s.code == 0);
    CHECK(slurp(dir / "set" / "port1.field") == slurp(dir / "port1.field"));
}

TEST_CASE("bench input errors exit 3") {
    const Result b = run({"bench", bench_file("broken.bench")});
    CHECK(b.code == 3);
    CHECK(b.err.find("broken.bench: line 4: unknown element 'qwpp'") != std::string::npos);
    CHECK(run({"bench", bench_file("does_not_exist.bench")}).code == 3);
    CHECK(run({"bench", bench_file("fig4.bench"), "--set", "phi=1", "--grid-n", "32", "--out", scratch("b3").string()}).code == 3);
    CHECK(run({"bench", bench_file("fig4.bench"), "--set", "theta"}).code == 2);
}

TEST_CASE("chsh") {
    const Result r = run({"chsh", "--state", "hh_vv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("four-setting CHSH: violated, max |S| = 2.82842712") != std::string::npos);
    const Result d = run({"chsh", "--state", "hh_vv", "--purity", "0.6"});
    CHECK(d.out.find("not violated") != std::string::npos);
    CHECK(run({"chsh", "--state", "hh_vv", "--step", "0"}).code == 2);
}

TEST_CASE("LUMENBELL_GRID_N sets the default grid") {
    const fs::path dir = scratch("env");
    ::setenv("LUMENBELL_GRID_N", "32", 1);
    const Result r = run({"generate", "--state", "scalar_hr", "--out", dir.string()});
    const auto rows = read_matrix(dir / "s1.txt");
    ::setenv("LUMENBELL_GRID_N", "abc", 1);
    const Result bad = run({"generate", "--state", "scalar_hr", "--out", dir.string()});
    ::unsetenv("LUMENBELL_GRID_N");
    CHECK(r.code == 0);
    CHECK(rows.size() == 32);
    CHECK(bad.code == 2);
}
