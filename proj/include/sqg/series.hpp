#pragma once

#include <cmath>
#include <vector>

#include "sqg/errors.hpp"

namespace sqg {

// One sampled row of scalar diagnostics along a run.
struct NormSample {
    double t = 0.0;
    double l2 = 0.0;        // ||theta||_2
    double lp_crit = 0.0;   // scale-invariant Lebesgue norm (0 when undefined)
    double l4 = 0.0;        // ||theta||_4
    double h_alpha = 0.0;   // ||Lambda^alpha theta||_2
    double besov_s0 = 0.0;  // sup_k 2^{k s0} ||P_k theta||_2
    double besov_running = 0.0;        // J(t): running sup of besov_s0
    double dissipation_integral = 0.0; // int_0^t ||Lambda^alpha theta||_2^2
    std::vector<double> shells;        // 2^{k s0} ||P_k theta||_2 per shell
};

struct NormSeries {
    double alpha = 0.0;
    double kappa = 0.0;
    double p_critical = 0.0;  // 0 when alpha <= 1/2
    int bank_kmax = 0;
    std::vector<NormSample> rows;

    void append(NormSample s) {
        if (!rows.empty() && !(s.t > rows.back().t))
            throw ConfigError("series samples must advance in time");
        if (!std::isfinite(s.l2) || !std::isfinite(s.besov_s0))
            throw ConfigError("series sample is not finite");
        rows.push_back(std::move(s));
    }
};

// Dense per-shell record for difference-quotient checks.
struct ShellSample {
    double t = 0.0;
    std::vector<double> energy;  // ||P_k theta||_2 per tested shell
    std::vector<double> lq;      // ||P_k theta||_q per tested shell
    double sup_lambda_s0 = 0.0;  // sup_l ||Lambda^{s0} P_l theta||_2 over the bank
};

struct ShellSeries {
    double q = 0.0;
    double s0 = 0.0;
    int kmax_tested = -1;  // rows carry shells 0..kmax_tested
    std::vector<ShellSample> rows;

    void append(ShellSample s) {
        if (!rows.empty() && !(s.t > rows.back().t))
            throw ConfigError("shell samples must advance in time");
        rows.push_back(std::move(s));
    }
};

}  // namespace sqg
