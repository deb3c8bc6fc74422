#pragma once

#include <cstdint>
#include <optional>

#include "sqg/field.hpp"

namespace sqg {

enum class InitKind {
    single_mode,      // sin(x1)
    one_dimensional,  // sin(x1) + cos(2 x1)/2, steady profile (zero drift term)
    two_mode,         // sin(x1) + cos(2 x2), smallest profile with active drift
    random_spectrum,  // random phases on a dyadic band, power-law amplitudes
};

enum class NormTarget {
    none,       // keep raw amplitude
    besov_s0,   // sup_k 2^{k s0} ||P_k theta||_2
    lp_critical // scale-invariant Lebesgue norm
};

struct InitialDataSpec {
    InitKind kind = InitKind::random_spectrum;
    int k_lo = 1;        // band lower radius (inclusive), random_spectrum only
    int k_hi = 12;       // band upper radius (inclusive)
    std::optional<double> beta;  // spectral slope |xi|^-beta, default s0 + 1
    NormTarget target = NormTarget::besov_s0;
    double norm_target = 1.0;
    double amplitude = 1.0;  // used when target == none, and for fixed profiles
};

// Random real field supported on r_lo <= |xi| <= r_hi with amplitude
// |xi|^-beta and phases hashed from (seed, xi), so the same seed fills the
// same modes with the same coefficients on every resolution that holds them.
SpectralField random_band_field(const GridSpec& grid, double r_lo, double r_hi,
                                double beta, std::uint64_t seed);

SpectralField generate_initial_data(const InitialDataSpec& spec, const GridSpec& grid,
                                    double alpha, std::uint64_t seed);

}  // namespace sqg
