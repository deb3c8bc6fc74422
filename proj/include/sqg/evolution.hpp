#pragma once

#include <cstdint>
#include <optional>

#include "sqg/field.hpp"
#include "sqg/initial_data.hpp"
#include "sqg/series.hpp"

namespace sqg {

enum class StepPolicy { fixed, cfl };

struct SimConfig {
    GridSpec grid{64};
    double alpha = 0.75;
    double kappa = 1.0;
    double t_end = 5.0;
    StepPolicy policy = StepPolicy::cfl;
    double dt = 5e-3;          // fixed policy step, and the CFL fallback scale
    double cfl_number = 0.5;
    double dt_max = 5e-3;
    int diagnostic_stride = 4;
    std::uint64_t seed = 7;
    InitialDataSpec init{};
    bool allow_out_of_hypothesis = false;

    void validate(bool enforce_hypothesis = true) const;
    bool in_hypothesis() const { return alpha > 0.5 && alpha < 1.0 && kappa > 0.0; }
    std::uint64_t param_hash() const;
};

struct Snapshot {
    double time = 0.0;
    SpectralField theta;
    std::uint64_t config_hash = 0;
};

// u . grad(theta) with u the divergence-free Riesz velocity, dealiased,
// mean removed. The advective form; the evolution equation uses -N.
SpectralField nonlinear_term(const SpectralField& theta);

// Largest admissible step under the advective CFL restriction.
double cfl_dt(const SimConfig& cfg, double u_max);

// One integrating-factor RK4 step. Under the cfl policy the call refuses a
// step larger than the admissible one (CflError carries the bound); the
// fixed policy trusts the caller.
void step(SpectralField& theta, double dt, const SimConfig& cfg);

struct ShellRecordOptions {
    double q = 4.0;
    double s0 = 0.5;
    int kmax = 3;
};

struct RecordOptions {
    std::optional<ShellRecordOptions> shells;  // dense per-step shell record
    bool keep_final = true;
};

struct RunResult {
    Snapshot final;
    NormSeries series;
    std::optional<ShellSeries> shell_series;
    long long steps = 0;
};

RunResult run(const SimConfig& cfg, const RecordOptions& rec = {});
RunResult run_from(const SimConfig& cfg, SpectralField theta0,
                   const RecordOptions& rec = {});

}  // namespace sqg
