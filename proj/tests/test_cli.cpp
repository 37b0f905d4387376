#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = lowdiss::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / name;
    fs::remove_all(d);
    return d;
}

}  // namespace

TEST_CASE("bounds subcommand") {
    const Run r = run({"bounds", "--p", "1", "--zeta", "1", "--eta-c", "0.6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("eta_upper = 0.7142857142857143") != std::string::npos);
    CHECK(run({"bounds", "--p", "1.5", "--zeta", "0", "--eta-c", "0.6"}).code == 2);
    CHECK(run({"bounds", "--p", "0.5", "--zeta", "2", "--eta-c", "0.6"}).code == 2);
    CHECK(run({"bounds", "--p", "0.5"}).code == 2);
}

TEST_CASE("usage errors and help") {
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--config", "/does/not/exist", "curves"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("curves and sample write reproducible files") {
    const fs::path d = fresh_dir("lowdiss_cli_test");
    CHECK(run({"--output", d.string(), "curves", "--eta-c", "0.5"}).code == 0);
    const std::string curves = slurp(d / "curves.csv");
    CHECK(curves.rfind("eta_c,zeta,p_norm", 0) == 0);

    const std::vector<std::string> sample{"--output", d.string(), "sample", "--n", "500", "--seed", "5"};
    const Run first = run(sample);
    CHECK(first.code == 0);
    CHECK(first.out.find("violations = 0") != std::string::npos);
    const std::string s1 = slurp(d / "samples.csv"), a1 = slurp(d / "audit.csv");
    CHECK(run(sample).code == 0);
    CHECK(slurp(d / "samples.csv") == s1);
    CHECK(slurp(d / "audit.csv") == a1);
    CHECK(run({"--output", d.string(), "sample", "--mode", "bogus"}).code == 2);
    fs::remove_all(d);
}

TEST_CASE("configuration file drives the run") {
    const fs::path d = fresh_dir("lowdiss_cli_cfg");
    fs::create_directories(d);
    {
        std::ofstream cfg(d / "run.ini");
        cfg << "[curves]\neta_c = 0.3\nzetas = 0\npoints = 11\n[output]\ndirectory = " << (d / "o").string()
            << "\n";
    }
    CHECK(run({"--config", (d / "run.ini").string(), "curves"}).code == 0);
    const std::string text = slurp(d / "o" / "curves.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 12);
    {
        std::ofstream bad(d / "bad.ini");
        bad << "[engine]\nwhat = 1\n";
    }
    CHECK(run({"--config", (d / "bad.ini").string(), "curves"}).code == 2);
    fs::remove_all(d);
}

TEST_CASE("simulate and mni-compare") {
    const fs::path d = fresh_dir("lowdiss_cli_sim");
    const Run r = run({"--output", d.string(), "simulate", "--t-h", "20", "--t-c", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("regime = in_regime") != std::string::npos);
    CHECK(fs::exists(d / "samples.csv"));
    CHECK(run({"--output", d.string(), "simulate", "--t-h", "-1"}).code == 2);
    const Run m = run({"mni-compare"});
    CHECK(m.code == 0);
    CHECK(m.out.find("p_max") != std::string::npos);
    fs::remove_all(d);
}
