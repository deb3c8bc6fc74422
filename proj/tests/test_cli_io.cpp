#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "doctest.h"
#include "sqg/config.hpp"
#include "sqg/errors.hpp"
#include "sqg/evolution.hpp"
#include "sqg/filter_bank.hpp"
#include "sqg/initial_data.hpp"
#include "sqg/operators.hpp"
#include "sqg/report_io.hpp"
#include "sqg/snapshot_io.hpp"
#include "sqg/transform.hpp"

using namespace sqg;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string error_text(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config parsing maps every key") {
    const SimConfig cfg = parse_config(
        "# experiment\n"
        "alpha = 0.6\n"
        "kappa = 2.0\n"
        "n = 128\n"
        "dealias_fraction = 0.5\n"
        "t_end = 3.5\n"
        "dt_policy = fixed\n"
        "dt = 1e-3\n"
        "cfl_number = 0.4\n"
        "dt_max = 2e-3\n"
        "diagnostic_stride = 8\n"
        "seed = 42\n"
        "init_kind = random_spectrum\n"
        "init_k_lo = 2\n"
        "init_k_hi = 9\n"
        "init_beta = 1.25\n"
        "init_norm_kind = lp_crit\n"
        "init_norm_target = 0.5\n"
        "allow_out_of_hypothesis = false\n");
    CHECK(cfg.alpha == 0.6);
    CHECK(cfg.kappa == 2.0);
    CHECK(cfg.grid.n == 128);
    CHECK(cfg.grid.dealias_fraction == 0.5);
    CHECK(cfg.t_end == 3.5);
    CHECK(cfg.policy == StepPolicy::fixed);
    CHECK(cfg.dt == 1e-3);
    CHECK(cfg.cfl_number == 0.4);
    CHECK(cfg.dt_max == 2e-3);
    CHECK(cfg.diagnostic_stride == 8);
    CHECK(cfg.seed == 42);
    CHECK(cfg.init.kind == InitKind::random_spectrum);
    CHECK(cfg.init.k_lo == 2);
    CHECK(cfg.init.k_hi == 9);
    CHECK(cfg.init.beta == 1.25);
    CHECK(cfg.init.target == NormTarget::lp_critical);
    CHECK(cfg.init.norm_target == 0.5);
    CHECK(cfg.in_hypothesis());
}

TEST_CASE("config accepts a supercritical alpha but a run rejects it") {
    const SimConfig cfg = parse_config("alpha = 0.4 # supercritical\n");
    CHECK(cfg.alpha == 0.4);
    CHECK(!cfg.in_hypothesis());
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config errors name the key and line") {
    const std::string out_of_range =
        error_text([] { parse_config("alpha = 1.5\n", "exp.cfg"); });
    CHECK(out_of_range.find("alpha") != std::string::npos);
    CHECK(out_of_range.find("exp.cfg:1") != std::string::npos);

    const std::string unknown = error_text(
        [] { parse_config("kappa = 1.0\nalhpa = 0.7\n", "exp.cfg"); });
    CHECK(unknown.find("alhpa") != std::string::npos);
    CHECK(unknown.find("exp.cfg:2") != std::string::npos);

    const std::string unparsable =
        error_text([] { parse_config("n = twelve\n", "exp.cfg"); });
    CHECK(unparsable.find("n") != std::string::npos);
    CHECK(unparsable.find(":1") != std::string::npos);

    CHECK_THROWS_AS(parse_config("alpha\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("dt_policy = sometimes\n"), ConfigError);
}

TEST_CASE("config file round trip and missing file") {
    const std::string path = temp_path("sqg_test_config.cfg");
    {
        std::ofstream out(path);
        out << "alpha = 0.75\nn = 32\nseed = 5\n";
    }
    const SimConfig cfg = parse_config_file(path);
    CHECK(cfg.alpha == 0.75);
    CHECK(cfg.grid.n == 32);
    std::remove(path.c_str());

    CHECK_THROWS_AS(parse_config_file(path), IoError);
}

TEST_CASE("named initial profiles are exact") {
    const GridSpec grid(32);
    InitialDataSpec spec;
    spec.kind = InitKind::single_mode;
    spec.target = NormTarget::none;
    spec.amplitude = 1.0;

    const SpectralField f = generate_initial_data(spec, grid, 0.75, 1);
    CHECK(std::abs(f.at(1, 0) - Complex(0.0, -0.5)) == 0.0);
    CHECK(std::abs(f.at(-1, 0) - Complex(0.0, 0.5)) == 0.0);
    CHECK(l2_norm(f) == doctest::Approx(M_PI * std::sqrt(2.0)).epsilon(1e-14));

    spec.kind = InitKind::two_mode;
    const SpectralField g = generate_initial_data(spec, grid, 0.75, 1);
    CHECK(std::abs(g.at(0, 2) - Complex(0.5, 0.0)) == 0.0);
    CHECK(std::abs(g.mean()) == 0.0);
}

TEST_CASE("random data hits the requested Besov norm") {
    const GridSpec grid(64);
    InitialDataSpec spec;
    spec.kind = InitKind::random_spectrum;
    spec.k_lo = 1;
    spec.k_hi = 12;
    spec.target = NormTarget::besov_s0;
    spec.norm_target = 1.0;

    const SpectralField f = generate_initial_data(spec, grid, 0.75, 7);
    const DyadicFilterBank bank(grid);
    CHECK(besov_norm_2inf(bank, f, 0.5) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(f.mean()) == 0.0);
    CHECK(f.support_radius_inf() <= grid.dealias_cutoff());
    CHECK(imag_residue(f) < 1e-13);
}

TEST_CASE("random data hits the requested critical Lebesgue norm") {
    const GridSpec grid(64);
    InitialDataSpec spec;
    spec.kind = InitKind::random_spectrum;
    spec.k_lo = 1;
    spec.k_hi = 10;
    spec.target = NormTarget::lp_critical;
    spec.norm_target = 0.7;

    const double alpha = 0.75;
    const SpectralField f = generate_initial_data(spec, grid, alpha, 8);
    const double p = 2.0 / (2.0 * alpha - 1.0);
    CHECK(lp_norm(to_physical(f), p) == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("random generation is deterministic and grid independent") {
    InitialDataSpec spec;
    spec.kind = InitKind::random_spectrum;
    spec.k_lo = 1;
    spec.k_hi = 10;
    spec.target = NormTarget::none;

    const SpectralField a = generate_initial_data(spec, GridSpec(32), 0.75, 3);
    const SpectralField b = generate_initial_data(spec, GridSpec(32), 0.75, 3);
    const SpectralField c = generate_initial_data(spec, GridSpec(64), 0.75, 3);

    for (int x2 = -10; x2 <= 10; ++x2)
        for (int x1 = -10; x1 <= 10; ++x1) {
            CHECK(std::abs(a.at(x1, x2) - b.at(x1, x2)) == 0.0);
            CHECK(std::abs(a.at(x1, x2) - c.at(x1, x2)) == 0.0);
        }

    const SpectralField d = generate_initial_data(spec, GridSpec(32), 0.75, 4);
    bool differs = false;
    for (int x1 = 1; x1 <= 10 && !differs; ++x1)
        differs = std::abs(a.at(x1, 0) - d.at(x1, 0)) > 0.0;
    CHECK(differs);
}

TEST_CASE("degenerate bands are rejected") {
    const GridSpec grid(32);
    InitialDataSpec spec;
    spec.kind = InitKind::random_spectrum;
    spec.k_lo = 5;
    spec.k_hi = 4;
    CHECK_THROWS_AS(generate_initial_data(spec, grid, 0.75, 1), ConfigError);

    spec.k_lo = 1;
    spec.k_hi = 64;  // beyond the dealias cutoff
    CHECK_THROWS_AS(generate_initial_data(spec, grid, 0.75, 1), ConfigError);
}

TEST_CASE("snapshot round trip preserves every coefficient") {
    const GridSpec grid(32);
    const SpectralField f = random_band_field(grid, 1.0, 10.0, 1.0, 12);
    const std::string path = temp_path("sqg_test_snapshot.sqgs");

    save_snapshot(path, f, 1.25, 0.75, 2.0);
    const LoadedSnapshot snap = load_snapshot(path);
    CHECK(snap.time == 1.25);
    CHECK(snap.alpha == 0.75);
    CHECK(snap.kappa == 2.0);
    REQUIRE(snap.theta.grid.n == 32);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        CHECK(std::abs(snap.theta.c[i] - f.c[i]) == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("snapshot loader rejects damaged files") {
    const GridSpec grid(32);
    const SpectralField f = random_band_field(grid, 1.0, 10.0, 1.0, 13);
    const std::string path = temp_path("sqg_test_snapshot_bad.sqgs");
    save_snapshot(path, f, 0.0, 0.75, 1.0);

    {
        std::filesystem::resize_file(path, 100);
        CHECK_THROWS_AS(load_snapshot(path), IoError);
    }
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "NOPE";
        out.write(std::string(200, '\0').data(), 200);
    }
    CHECK_THROWS_AS(load_snapshot(path), IoError);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_snapshot(temp_path("sqg_no_such_snapshot.sqgs")), IoError);
}

TEST_CASE("series CSV has the pinned columns and is bit-stable") {
    SimConfig cfg;
    cfg.grid = GridSpec(32);
    cfg.alpha = 0.75;
    cfg.kappa = 1.0;
    cfg.t_end = 0.05;
    cfg.policy = StepPolicy::fixed;
    cfg.dt = 5e-3;
    cfg.dt_max = 5e-3;
    cfg.diagnostic_stride = 2;
    cfg.seed = 9;
    cfg.init.k_hi = 8;

    const std::string csv_a = series_to_csv(run(cfg).series);
    const std::string csv_b = series_to_csv(run(cfg).series);
    CHECK(csv_a == csv_b);

    const std::string header = csv_a.substr(0, csv_a.find('\n'));
    CHECK(header == "t,l2,lp_crit,h_alpha,besov_s0,J,shell_0,shell_1,shell_2,"
                    "shell_3,shell_4");

    SimConfig other = cfg;
    other.seed = 10;
    CHECK(series_to_csv(run(other).series) != csv_a);
}

TEST_CASE("series JSON carries the extra observables") {
    SimConfig cfg;
    cfg.grid = GridSpec(32);
    cfg.alpha = 0.75;
    cfg.kappa = 1.0;
    cfg.t_end = 0.02;
    cfg.policy = StepPolicy::fixed;
    cfg.dt = 5e-3;
    cfg.dt_max = 5e-3;
    cfg.init.k_hi = 6;

    const nlohmann::json j = series_to_json(run(cfg).series);
    CHECK(j.contains("alpha"));
    CHECK(j.contains("rows"));
    REQUIRE(!j["rows"].empty());
    CHECK(j["rows"][0].contains("l4"));
    CHECK(j["rows"][0].contains("dissipation_integral"));
    CHECK(j["rows"][0].contains("shells"));
}

TEST_CASE("report serialization carries the verdict") {
    InequalityReport rep;
    rep.name = "demo";
    rep.params = {{"kappa", 1.0}};
    rep.samples = {{0.0, 2, 1.0, 2.0, 0.5}, {0.1, 2, 1.5, 2.0, 0.75}};
    rep.measured_constant = 0.75;
    rep.pass = true;
    rep.skipped_samples = 1;
    rep.notes = "demo report";

    const nlohmann::json j = report_to_json(rep);
    CHECK(j["name"] == "demo");
    CHECK(j["pass"] == true);
    CHECK(j["complete"] == true);
    CHECK(j["skipped_samples"] == 1);
    CHECK(j["measured_constant"] == 0.75);
    CHECK(j["samples"].size() == 2);

    const std::string csv = report_to_csv(rep);
    CHECK(csv.substr(0, csv.find('\n')) == "name,t,k,lhs,rhs,ratio");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("text writer surfaces filesystem failures") {
    CHECK_THROWS_AS(write_text_file("/nonexistent_dir_xq/report.csv", "x"),
                    IoError);
    const std::string path = temp_path("sqg_test_text.txt");
    write_text_file(path, "payload");
    std::ifstream in(path);
    std::string content;
    std::getline(in, content);
    CHECK(content == "payload");
    std::remove(path.c_str());
}
