#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#ifndef CURVESCAT_CLI_PATH
#error "CURVESCAT_CLI_PATH must point at the curvescat binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
constexpr double pi = std::numbers::pi;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("curvescat_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

int run(const std::string& args) {
    const std::string cmd =
        std::string(CURVESCAT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return json::parse(in);
}

}  // namespace

TEST_CASE("xsec classical: hemisphere cardioid CSV and sidecar") {
    TempDir tmp;
    const std::string prefix = (tmp.path / "card").string();
    REQUIRE(run("xsec --alpha 0.5pi --kr 10 --method classical --theta-count 64 -o " +
                prefix) == 0);

    const auto rows = read_csv(prefix + ".csv");
    REQUIRE(rows.size() == 65);
    REQUIRE(rows[0] == std::vector<std::string>{"theta", "classical", "support"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double theta = std::strtod(rows[i][0].c_str(), nullptr);
        const double val = std::strtod(rows[i][1].c_str(), nullptr);
        // 2 R sin(alpha) D(pi/2, theta) = cos(theta/2)/2
        CHECK(std::abs(val - 0.5 * std::cos(theta / 2.0)) < 1e-12);
        CHECK(rows[i][2] == "1");
    }

    const json meta = read_json(prefix + ".json");
    CHECK(meta["version"] == "1.0.0");
    CHECK(meta["subcommand"] == "xsec");
    CHECK(meta["alpha"].get<double>() == doctest::Approx(pi / 2.0));
    CHECK(meta["method"] == "classical");
    CHECK(meta["grid"]["count"] == 64);
    CHECK(meta["tolerances"].contains("ode_rtol"));
    CHECK(meta.contains("seed"));
}

TEST_CASE("CSV numbers survive a parse/print round trip at full precision") {
    TempDir tmp;
    const std::string prefix = (tmp.path / "rt").string();
    REQUIRE(run("xsec --alpha 0.3pi --kr 6 --method classical --theta-count 16 -o " +
                prefix) == 0);
    const auto rows = read_csv(prefix + ".csv");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        for (const std::string& cell : {rows[i][0], rows[i][1]}) {
            const double v = std::strtod(cell.c_str(), nullptr);
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            CHECK(cell == buf);
        }
    }
}

TEST_CASE("json format embeds the table in a single file") {
    TempDir tmp;
    const std::string prefix = (tmp.path / "j").string();
    REQUIRE(run("xsec --alpha 0.4pi --kr 4 --method classical --theta-count 8 "
                "--format json -o " +
                prefix) == 0);
    CHECK_FALSE(fs::exists(prefix + ".csv"));
    const json meta = read_json(prefix + ".json");
    REQUIRE(meta.contains("data"));
    CHECK(meta["data"]["columns"] ==
          json::array({"theta", "classical", "support"}));
    CHECK(meta["data"]["rows"].size() == 8);
}

TEST_CASE("phase-table: anomalous tail criterion") {
    TempDir tmp;
    const std::string prefix = (tmp.path / "pt").string();
    REQUIRE(run("phase-table --alpha 0.875pi --kr 20 -o " + prefix) == 0);
    const auto rows = read_csv(prefix + ".csv");
    REQUIRE(rows[0] == std::vector<std::string>{"m", "delta_m", "sin2_delta_m",
                                                "above_contact"});
    const double x = 20.0 * std::sin(0.875 * pi);
    double worst = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double m = std::strtod(rows[i][0].c_str(), nullptr);
        const double s2 = std::strtod(rows[i][2].c_str(), nullptr);
        if (m > x + 2.0) worst = std::max(worst, s2);
        CHECK(rows[i][3] == (m > x ? "1" : "0"));
    }
    CHECK(worst < 0.01);
    const json meta = read_json(prefix + ".json");
    CHECK(meta["kR_sin_alpha"].get<double>() == doctest::Approx(x));
    CHECK(meta["m_max"].get<int>() == static_cast<int>(rows.size()) - 2);
}

TEST_CASE("scan: asymptote column and peak list") {
    TempDir tmp;
    const std::string prefix = (tmp.path / "sc").string();
    REQUIRE(run("scan --alpha 0.45pi --kr-min 3 --kr-max 5 --count 8 -o " +
                prefix) == 0);
    const auto rows = read_csv(prefix + ".csv");
    REQUIRE(rows[0] == std::vector<std::string>{"kR", "sigma_over_R",
                                                "sigma_sc_over_R", "asymptote"});
    const double asym = 4.0 * std::sin(0.45 * pi);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::strtod(rows[i][3].c_str(), nullptr) ==
              doctest::Approx(asym).epsilon(1e-14));
    const json meta = read_json(prefix + ".json");
    CHECK(meta["peaks"].is_array());
    CHECK(meta["peaks"].empty());  // sub-hemisphere: no resonances
    CHECK(meta["kR_min"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("trajectory --theta emits both impact-parameter branches") {
    TempDir tmp;
    const std::string prefix = (tmp.path / "tr").string();
    REQUIRE(run("trajectory --alpha 0.25pi --theta 0.25 --points 64 -o " +
                prefix) == 0);
    const auto rows = read_csv(prefix + ".csv");
    REQUIRE(rows[0] == std::vector<std::string>{"branch", "x", "y", "z", "s",
                                                "segment"});
    bool has_plus = false, has_minus = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] == "plus") has_plus = true;
        if (rows[i][0] == "minus") has_minus = true;
        CHECK((rows[i][5] == "incoming" || rows[i][5] == "sphere" ||
               rows[i][5] == "outgoing"));
    }
    CHECK(has_plus);
    CHECK(has_minus);
    const json meta = read_json(prefix + ".json");
    REQUIRE(meta["trajectories"].size() == 2);
    for (const auto& t : meta["trajectories"])
        CHECK(t["theta"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("config errors exit with code 2") {
    CHECK(run("xsec --alpha 1.5pi --kr 10 --method classical") == 2);
    CHECK(run("xsec --alpha 0.5pi --kr -3 --method classical") == 2);
    CHECK(run("xsec --alpha 0.5pi --kr 10 --method bogus") == 2);
    CHECK(run("xsec --alpha nonsense --kr 10") == 2);
    CHECK(run("trajectory --alpha 0.25pi --theta 3.0") == 2);  // outside support
    CHECK(run("trajectory --alpha 0.25pi") == 2);  // neither beta nor theta
    CHECK(run("") == 2);  // missing subcommand
}

TEST_CASE("i/o errors exit with code 4") {
    CHECK(run("xsec --alpha 0.5pi --kr 5 --method classical --theta-count 8 "
              "-o /nonexistent-dir-curvescat/out") == 4);
}
