#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cellout/errors.hpp"
#include "cellout/harness/config.hpp"
#include "cellout/harness/experiment.hpp"

using namespace cellout;
using namespace cellout::harness;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("cellout_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const fs::path& p) {
    const auto s = slurp(p);
    return s.substr(0, s.find('\n'));
}

OutageCurve logistic(double shift) {
    OutageCurve c;
    for (double d = -30.0; d <= 10.0 + 1e-9; d += 0.1) {
        c.thresholds_db.push_back(d);
        c.probs.push_back(1.0 / (1.0 + std::exp(-(d + 10.0 - shift) / 2.0)));
    }
    return c;
}

}  // namespace

TEST_CASE("compare") {
    const auto a = logistic(0.0);
    const auto same = compare(a, a);
    CHECK(same.max_deviation == 0.0);
    CHECK(same.shift_db == 0.0);

    const auto b = logistic(1.0);
    const auto r = compare(a, b);
    CHECK(r.max_deviation > 0.0);
    CHECK(std::abs(r.shift_db - 1.0) <= 0.1);

    auto c = a;
    c.thresholds_db.back() += 0.05;
    CHECK_THROWS_AS(compare(a, c), DomainError);
    auto d = a;
    d.thresholds_db.pop_back();
    d.probs.pop_back();
    CHECK_THROWS_AS(compare(a, d), DomainError);
}

TEST_CASE("minimal analytic experiment") {
    TempDir tmp("minimal");
    auto cfg = parse_config(R"({"channel": {"sigma_db": 3}, "modes": {"models": ["fluid"]},
                                "output": {"svg": false}})");
    cfg.output.directory = tmp.path;
    const auto res = run_experiment(cfg, 1);
    CHECK(res.curves.size() == 1);
    CHECK(res.rows.empty());
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(tmp.path)) {
        (void)e;
        ++files;
    }
    CHECK(files == 2);
    const auto curve = tmp.path / "curve_eta3_sigma3_r1_fading_fluid.csv";
    REQUIRE(fs::exists(curve));
    CHECK(first_line(curve) == "delta_db,prob,stderr");
    CHECK(first_line(tmp.path / "report.csv") ==
          "eta,sigma_db,r_over_rc,mode_a,mode_b,max_dev,delta10_a_db,delta10_b_db,shift_db");
    const auto back = read_curve_csv(curve);
    CHECK(back.probs == res.curves[0].curve.probs);
    CHECK(back.thresholds_db == cfg.thresholds_db);
}

TEST_CASE("canonical experiment shape and reproducibility") {
    TempDir one("canon1");
    TempDir two("canon2");
    auto cfg = parse_config(R"({"channel": {"eta": 3, "sigma_db": [3, 6]},
                                "sim": {"snapshots": 400, "seed": 9}})");
    cfg.output.directory = one.path;
    const auto res = run_experiment(cfg, 1);
    CHECK(res.curves.size() == 6);
    CHECK(res.rows.size() == 6);
    for (const auto& row : res.rows) {
        CHECK(row.report.max_deviation >= 0.0);
    }
    cfg.output.directory = two.path;
    run_experiment(cfg, 3);
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(one.path)) {
        const auto name = e.path().filename();
        CHECK(slurp(e.path()) == slurp(two.path / name));
        ++compared;
    }
    CHECK(compared == 6 + 1 + 2);  // curves, report, charts
    CHECK(slurp(one.path / "chart_eta3_sigma3_r1_fading.svg").find("stroke-dasharray") !=
          std::string::npos);
}

TEST_CASE("m_f sweep output") {
    TempDir tmp("mf");
    auto cfg = parse_config(R"({"output": {"svg": false}})");
    cfg.output.directory = tmp.path;
    mf_sweep(cfg);
    std::ifstream in(tmp.path / "mf_vs_sigma.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "eta,r_over_rc,sigma_db,m_f_db,m_f_linear,s_f_db,h_factor,g_factor");
    double prev = -1e300;
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            v.push_back(std::stod(cell));
        }
        REQUIRE(v.size() == 8);
        if (rows == 0) {
            CHECK(v[2] == 0.0);
            CHECK(v[6] == 1.0);
            CHECK(v[5] == 0.0);
        }
        CHECK(v[3] >= prev);
        prev = v[3];
        ++rows;
    }
    CHECK(rows == 41);
    CHECK(first_line(tmp.path / "mf_saturation.csv") ==
          "eta,r_over_rc,g_factor,h_limit,h_at_12db,ratio_12db");
}

TEST_CASE("coverage and capacity tables") {
    TempDir tmp("tables");
    auto cfg = parse_config(R"({"channel": {"eta": 4, "sigma_db": [3, 6]},
                                "modes": {"models": ["discrete", "fluid", "mc"]},
                                "sim": {"snapshots": 200}})");
    cfg.output.directory = tmp.path;
    coverage_table(cfg);
    capacity_table(cfg, 1);
    CHECK(first_line(tmp.path / "coverage.csv") ==
          "eta,sigma_db,mode,delta_db,p_target,radius_m,radius_over_rc,status");
    const auto cap = slurp(tmp.path / "capacity.csv");
    CHECK(cap.rfind("eta,sigma_db,r_over_rc,mode,model,capacity_bps_hz\n", 0) == 0);
    CHECK(std::count(cap.begin(), cap.end(), '\n') == 1 + 6);
}

TEST_CASE("number formatting is locale-free and round-trips") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(std::stod(format_number(2.0 / 3.0)) == 2.0 / 3.0);
}
