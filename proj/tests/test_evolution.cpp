#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>

#include "doctest.h"
#include "sqg/diagnostics.hpp"
#include "sqg/errors.hpp"
#include "sqg/evolution.hpp"
#include "sqg/initial_data.hpp"
#include "sqg/operators.hpp"

using namespace sqg;

namespace {

SimConfig quick_config(int n) {
    SimConfig cfg;
    cfg.grid = GridSpec(n);
    cfg.alpha = 0.75;
    cfg.kappa = 1.0;
    cfg.t_end = 0.1;
    cfg.policy = StepPolicy::fixed;
    cfg.dt = 5e-3;
    cfg.dt_max = 5e-3;
    cfg.diagnostic_stride = 2;
    cfg.seed = 11;
    cfg.init.kind = InitKind::random_spectrum;
    cfg.init.k_lo = 1;
    cfg.init.k_hi = 8;
    return cfg;
}

}  // namespace

TEST_CASE("drift vanishes for one-dimensional data") {
    const GridSpec grid(32);
    SpectralField f(grid);
    f.at(1, 0) = Complex(0.0, -0.5);
    f.at(-1, 0) = Complex(0.0, 0.5);
    CHECK(l2_norm(nonlinear_term(f)) <= 1e-14);
}

TEST_CASE("drift vanishes for any single-radius field") {
    const GridSpec grid(32);
    SpectralField f(grid);
    f.at(1, 0) = Complex(0.0, -0.5);
    f.at(-1, 0) = Complex(0.0, 0.5);
    f.at(0, 1) = Complex(0.5, 0.0);
    f.at(0, -1) = Complex(0.5, 0.0);
    CHECK(l2_norm(nonlinear_term(f)) <= 1e-14);
}

TEST_CASE("drift of the two-mode profile is an exact product") {
    // theta = sin(x1) + cos(2 x2)  =>  u . grad theta = cos(x1) sin(2 x2).
    const GridSpec grid(32);
    SpectralField f(grid);
    f.at(1, 0) = Complex(0.0, -0.5);
    f.at(-1, 0) = Complex(0.0, 0.5);
    f.at(0, 2) = Complex(0.5, 0.0);
    f.at(0, -2) = Complex(0.5, 0.0);

    SpectralField expected(grid);
    expected.at(1, 2) = Complex(0.0, -0.25);
    expected.at(-1, 2) = Complex(0.0, -0.25);
    expected.at(1, -2) = Complex(0.0, 0.25);
    expected.at(-1, -2) = Complex(0.0, 0.25);

    SpectralField got = nonlinear_term(f);
    got.axpy(-1.0, expected);
    CHECK(l2_norm(got) <= 1e-14);
}

TEST_CASE("drift is mean free and dealiased") {
    const GridSpec grid(64);
    const SpectralField f = random_band_field(grid, 1.0, 20.0, 1.0, 31);
    const SpectralField w = nonlinear_term(f);
    CHECK(std::abs(w.mean()) == 0.0);
    CHECK(w.support_radius_inf() <= grid.dealias_cutoff());
    CHECK(l2_norm(w) > 0.0);
}

TEST_CASE("CFL step bound") {
    SimConfig cfg = quick_config(32);
    cfg.policy = StepPolicy::cfl;
    cfg.cfl_number = 0.5;
    cfg.dt_max = 1.0;
    const double dx = cfg.grid.dx();

    CHECK(cfl_dt(cfg, 0.0) == 1.0);
    CHECK(cfl_dt(cfg, 4.0) == doctest::Approx(0.5 * dx / 4.0).epsilon(1e-15));
}

TEST_CASE("step refuses an oversized step under the CFL policy") {
    SimConfig cfg = quick_config(32);
    cfg.policy = StepPolicy::cfl;
    cfg.cfl_number = 0.5;

    SpectralField f(cfg.grid);
    f.at(1, 0) = Complex(0.0, -0.5);
    f.at(-1, 0) = Complex(0.0, 0.5);

    bool threw = false;
    try {
        step(f, 10.0, cfg);
    } catch (const CflError& e) {
        threw = true;
        CHECK(e.admissible_dt() > 0.0);
        CHECK(e.admissible_dt() < 10.0);
    }
    CHECK(threw);

    SimConfig fixed = quick_config(32);
    SpectralField g = f;
    step(g, 10.0, fixed);  // the fixed policy trusts the caller
    CHECK(g.all_finite());
}

TEST_CASE("single-radius data follows the exact dissipative decay") {
    SimConfig cfg = quick_config(32);
    cfg.kappa = 0.7;
    cfg.t_end = 0.5;

    SpectralField f(cfg.grid);
    f.at(2, 1) = Complex(0.125, -0.25);
    f.at(-2, -1) = std::conj(f.at(2, 1));

    const RunResult r = run_from(cfg, f);
    const double expected =
        std::exp(-cfg.kappa * std::pow(5.0, cfg.alpha) * cfg.t_end);
    CHECK(std::abs(r.final.theta.at(2, 1) - expected * f.at(2, 1)) <=
          1e-12 * std::abs(f.at(2, 1)));
    CHECK(r.final.time == doctest::Approx(cfg.t_end).epsilon(1e-12));
    CHECK(r.steps == 100);
}

TEST_CASE("series sampling advances in time and records the stride") {
    SimConfig cfg = quick_config(32);
    const RunResult r = run(cfg);
    REQUIRE(r.series.rows.size() > 2);
    CHECK(r.series.rows.front().t == 0.0);
    CHECK(r.series.rows.back().t == doctest::Approx(cfg.t_end).epsilon(1e-12));
    for (std::size_t i = 1; i < r.series.rows.size(); ++i)
        CHECK(r.series.rows[i].t > r.series.rows[i - 1].t);
    for (const NormSample& row : r.series.rows) {
        CHECK(row.besov_running >= row.besov_s0 * (1.0 - 1e-15));
        CHECK(std::isfinite(row.h_alpha));
    }
}

TEST_CASE("identical configurations reproduce bit-identical states") {
    const SimConfig cfg = quick_config(32);
    const RunResult a = run(cfg);
    const RunResult b = run(cfg);
    REQUIRE(a.final.theta.c.size() == b.final.theta.c.size());
    CHECK(std::memcmp(a.final.theta.c.data(), b.final.theta.c.data(),
                      a.final.theta.c.size() * sizeof(Complex)) == 0);
    CHECK(a.final.config_hash == b.final.config_hash);

    SimConfig other = cfg;
    other.seed = 12;
    CHECK(other.param_hash() != cfg.param_hash());
}

TEST_CASE("discarding the final state leaves a zero placeholder") {
    SimConfig cfg = quick_config(32);
    RecordOptions rec;
    rec.keep_final = false;
    const RunResult r = run(cfg, rec);
    CHECK(l2_norm(r.final.theta) == 0.0);
    CHECK(r.final.theta.grid.n == 32);
}

TEST_CASE("shell recording samples every step") {
    SimConfig cfg = quick_config(32);
    cfg.t_end = 0.05;
    RecordOptions rec;
    rec.shells = ShellRecordOptions{4.0, 0.5, 2};
    const RunResult r = run(cfg, rec);
    REQUIRE(r.shell_series.has_value());
    CHECK(r.shell_series->kmax_tested == 2);
    CHECK(r.shell_series->rows.size() == std::size_t(r.steps + 1));
    for (const ShellSample& row : r.shell_series->rows) {
        CHECK(row.energy.size() == 3);
        CHECK(row.lq.size() == 3);
        CHECK(row.sup_lambda_s0 > 0.0);
    }
}

TEST_CASE("non-finite state raises a blow-up error") {
    SimConfig cfg = quick_config(32);
    SpectralField f(cfg.grid);
    f.at(1, 0) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(step(f, 1e-3, cfg), BlowupError);
}

TEST_CASE("hypothesis gating") {
    SimConfig cfg = quick_config(32);
    cfg.alpha = 0.4;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_NOTHROW(cfg.validate(false));
    cfg.allow_out_of_hypothesis = true;
    CHECK_NOTHROW(cfg.validate());
    CHECK(!cfg.in_hypothesis());

    SimConfig bad = quick_config(32);
    bad.alpha = 1.5;
    CHECK_THROWS_AS(bad.validate(false), ConfigError);
}

TEST_CASE("inviscid semi-discretization conserves energy") {
    SimConfig cfg = quick_config(32);
    cfg.kappa = 0.0;
    cfg.allow_out_of_hypothesis = true;
    cfg.t_end = 0.05;
    cfg.dt = 5e-4;
    cfg.dt_max = 5e-4;
    cfg.init.k_hi = 6;

    const RunResult r = run(cfg);
    const double e0 = r.series.rows.front().l2;
    const double e1 = r.series.rows.back().l2;
    CHECK(std::abs(e1 - e0) <= 1e-10 * e0);
}

TEST_CASE("energy ledger closes along a dissipative run") {
    SimConfig cfg = quick_config(32);
    cfg.t_end = 0.2;
    const RunResult r = run(cfg);
    const InequalityReport rep = energy_ledger(r.series);
    CHECK(rep.complete);
    CHECK(rep.pass);
    CHECK(rep.measured_constant <= 1e-5);
}
