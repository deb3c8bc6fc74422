#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace sqg {

struct VerifyOptions {
    int n_main = 128;         // grid for the long verification runs
    double t_end_main = 5.0;  // horizon for the long runs
    std::uint64_t seed = 7;
    int threads = 0;  // <= 0: SQG_THREADS env var, else a hardware default
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationSummary {
    std::vector<CriterionResult> results;
    bool all_pass = false;
};

// Runs the full self-verification battery: filter-bank identities, the
// paraproduct split, exact decay tracks, maximum principle, energy ledger,
// Besov functional boundedness, transport-bound constant stability, the
// per-shell inequality under refinement, scaling symmetry, the exponent
// table, and temporal self-convergence. One line per criterion goes to log.
VerificationSummary run_verification(const VerifyOptions& opts, std::ostream& log);

}  // namespace sqg
