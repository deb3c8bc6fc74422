#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqg/evolution.hpp"
#include "sqg/filter_bank.hpp"
#include "sqg/series.hpp"

namespace sqg {

struct InequalitySample {
    double t = 0.0;
    int k = -1;  // shell index, -1 for whole-field checks
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct InequalityReport {
    std::string name;
    std::map<std::string, double> params;
    std::vector<InequalitySample> samples;
    double measured_constant = 0.0;
    bool pass = false;
    bool complete = true;     // false when the series lacks the needed samples
    int skipped_samples = 0;  // below-floor samples excluded from the constant
    std::string notes;
};

// L^p norm of the state nonincreasing along the run, within tol relative.
InequalityReport max_principle_check(const NormSeries& series, double p,
                                     double tol = 1e-4);

// | l2(t)^2 + 2 kappa int_0^t ||Lambda^alpha theta||_2^2 - l2(0)^2 | / l2(0)^2
// stays below tol at every sample.
InequalityReport energy_ledger(const NormSeries& series, double tol = 1e-5);

// Difference-quotient form of the per-shell energy inequality
//   d/dt ||theta_k||_2^2 + c kappa 2^{2 alpha k} ||theta_k||_2^2
//     <= C 2^{k(1-s0)} ||theta^0||_p ||theta_k||_q sup_l ||Lambda^{s0} theta_l||_2
// with c := 1. Centered differences in time; samples whose RHS falls under
// floor_rel * max RHS are skipped and counted. measured_constant is the
// largest surviving ratio; stability across refined runs is judged by the
// caller.
InequalityReport shell_inequality_check(const ShellSeries& shells, double kappa,
                                        double alpha, double theta0_lp,
                                        double floor_rel = 1e-10);

// Ratio of the measured drift integral |int P_k psi_k (u . grad psi)| to the
// product-of-norms bound it is controlled by. Empty when the bound is too
// small to divide by.
std::optional<double> transport_ratio(const DyadicFilterBank& bank,
                                      const SpectralField& psi, int k, double s,
                                      double p, double q);

struct BesovFunctionalResult {
    std::vector<double> t;
    std::vector<double> J;  // running sup, nondecreasing by construction
    InequalityReport report;
};

// J(t) = sup_{z<=t} sup_k 2^{k s0} ||theta_k(z)||_2. Pass iff growth over the
// final third of the run stays below 1%. measured_constant is
// max_t (J(t) - 2 J(0))^+ / ||theta^0||_{p_crit}^M.
BesovFunctionalResult besov_functional_J(const NormSeries& series);

// Evolve theta0 to time T and the rescaled state lam^{2 alpha - 1} theta0(lam x)
// to time T / lam^{2 alpha} with matched steps, then compare mode-for-mode.
// measured_constant is the max relative coefficient mismatch.
InequalityReport scaling_symmetry_check(const SpectralField& theta0, int lam,
                                        const SimConfig& cfg, double tol = 1e-6);

}  // namespace sqg
