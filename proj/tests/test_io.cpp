#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "lowdiss/config.hpp"
#include "lowdiss/csv.hpp"

using namespace lowdiss;

TEST_CASE("configuration defaults") {
    const config::RunConfig c = config::parse_string("");
    CHECK(c.engine.m_hot == 9.0);
    CHECK(c.sampling.n == 1000);
    CHECK(c.sampling.seed == 42);
    CHECK(c.sampling.mode == harness::Mode::phenomenological);
    CHECK(c.curves.zetas.size() == 5);
    CHECK(c.output_directory == "out");
    const tla::BathCoupling b = c.bath_coupling();
    CHECK(b.gamma_c == doctest::Approx(0.405).epsilon(1e-12));
    const harness::SampleConfig s = c.sample_config(3);
    CHECK(s.threads == 3);
    CHECK(s.t_range_h.lo == 0.1);
    CHECK(s.t_range_c.hi == 100.0);
}

TEST_CASE("configuration values, comments and lists") {
    const config::RunConfig c = config::parse_string(
        "# engine\n[engine]\nM_h = 4 ; trailing\nT_c = 2\n\n"
        "[coupling]\ngamma_c = 0.3\n"
        "[sampling]\nmode = simulated\nseed = 7\nt_h_min = 20\n"
        "[curves]\nzetas = 0, 0.25 , 1\n"
        "[output]\ndirectory = results\n");
    CHECK(c.engine.m_hot == 4.0);
    CHECK(c.engine.t_cold_bath == 2.0);
    CHECK(c.bath_coupling().gamma_c == 0.3);
    CHECK(c.sampling.mode == harness::Mode::simulated);
    CHECK(c.sampling.seed == 7);
    REQUIRE(c.curves.zetas.size() == 3);
    CHECK(c.curves.zetas[1] == 0.25);
    CHECK(c.output_directory == "results");
    CHECK(c.sample_config(1).t_range_h.lo == 20.0);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(config::parse_string("[nope]\n"), config::ConfigError);
    CHECK_THROWS_AS(config::parse_string("[engine]\nfoo = 1\n"), config::ConfigError);
    CHECK_THROWS_AS(config::parse_string("[engine]\nM_h = 1\nM_h = 2\n"), config::ConfigError);
    CHECK_THROWS_AS(config::parse_string("[engine]\nM_h = abc\n"), config::ConfigError);
    CHECK_THROWS_AS(config::parse_string("M_h = 1\n"), config::ConfigError);
    CHECK_THROWS_AS(config::parse_string("[engine]\nM_h\n"), config::ConfigError);
    CHECK_THROWS_AS(config::parse_string("[sampling]\nmode = fast\n"), DomainError);
    CHECK_THROWS_AS(config::load("/nonexistent/file.ini"), DomainError);
}

TEST_CASE("number formatting round-trips") {
    CHECK(csv::format_field(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(csv::format_field(1.0) == "1.0000000000000000e+00");
    for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
        CHECK(std::stod(csv::format_field(x)) == x);
        CHECK(std::stod(csv::format_shortest(x)) == x);
    }
    CHECK(csv::format_shortest(0.1) == "0.1");
}

TEST_CASE("csv writers emit the documented headers") {
    std::ostringstream s;
    harness::SampleRow row;
    row.sample_id = 5;
    row.regime = harness::RegimeFlag::failed;
    row.eta = std::numeric_limits<double>::quiet_NaN();
    csv::write_samples(s, {row});
    std::istringstream in(s.str());
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    CHECK(header == csv::kSamplesHeader);
    CHECK(line.rfind("5,phenomenological,", 0) == 0);
    CHECK(line.find(",nan,") != std::string::npos);
    CHECK(std::count(line.begin(), line.end(), ',') == std::count(header.begin(), header.end(), ','));

    std::ostringstream e, c, a;
    csv::write_entropy(e, {});
    csv::write_curves(c, {});
    csv::write_audit(a, {});
    CHECK(e.str() == std::string(csv::kEntropyHeader) + "\n");
    CHECK(c.str() == std::string(csv::kCurvesHeader) + "\n");
    CHECK(a.str() == std::string(csv::kAuditHeader) + "\n");
}

TEST_CASE("appending samples writes the header once") {
    const auto dir = std::filesystem::temp_directory_path() / "lowdiss_io_test";
    std::filesystem::remove_all(dir);
    const auto path = dir / "sub" / "samples.csv";
    harness::SampleRow row;
    csv::append_sample(path, row);
    csv::append_sample(path, row);
    std::ifstream in(path);
    std::string line;
    int lines = 0, headers = 0;
    while (std::getline(in, line)) {
        ++lines;
        headers += line == csv::kSamplesHeader;
    }
    CHECK(lines == 3);
    CHECK(headers == 1);
    std::filesystem::remove_all(dir);
}
