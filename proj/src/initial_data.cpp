#include "sqg/initial_data.hpp"

#include <cmath>

#include "sqg/filter_bank.hpp"
#include "sqg/operators.hpp"
#include "sqg/transform.hpp"

namespace sqg {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mode_key(int xi1, int xi2) {
    const auto a = static_cast<std::uint64_t>(static_cast<std::uint32_t>(xi1));
    const auto b = static_cast<std::uint64_t>(static_cast<std::uint32_t>(xi2));
    return (a << 32) | b;
}

double unit_double(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

}  // namespace

SpectralField random_band_field(const GridSpec& grid, double r_lo, double r_hi,
                                double beta, std::uint64_t seed) {
    if (!(r_lo > 0.0) || !(r_hi >= r_lo))
        throw ConfigError("random band needs 0 < r_lo <= r_hi");
    SpectralField f(grid);
    const int half = grid.n / 2;
    const double lo2 = r_lo * r_lo, hi2 = r_hi * r_hi;
    for (int xi2 = -half + 1; xi2 < half; ++xi2) {
        for (int xi1 = -half + 1; xi1 < half; ++xi1) {
            // Canonical representative of each conjugate pair.
            if (xi2 < 0 || (xi2 == 0 && xi1 <= 0)) continue;
            const double r2 = double(xi1) * xi1 + double(xi2) * xi2;
            if (r2 < lo2 || r2 > hi2) continue;
            const std::uint64_t h = splitmix64(seed ^ splitmix64(mode_key(xi1, xi2)));
            const double phase = 2.0 * M_PI * unit_double(h);
            const double amp = 0.5 * std::pow(r2, -0.5 * beta);
            const Complex c(amp * std::cos(phase), amp * std::sin(phase));
            f.at(xi1, xi2) = c;
            f.at(-xi1, -xi2) = std::conj(c);
        }
    }
    return f;
}

SpectralField generate_initial_data(const InitialDataSpec& spec, const GridSpec& grid,
                                    double alpha, std::uint64_t seed) {
    const double s0 = 2.0 - 2.0 * alpha;
    SpectralField f(grid);

    switch (spec.kind) {
        case InitKind::single_mode:
            f.at(1, 0) = Complex(0.0, -0.5);
            f.at(-1, 0) = Complex(0.0, 0.5);
            break;
        case InitKind::one_dimensional:
            f.at(1, 0) = Complex(0.0, -0.5);
            f.at(-1, 0) = Complex(0.0, 0.5);
            f.at(2, 0) = Complex(0.25, 0.0);
            f.at(-2, 0) = Complex(0.25, 0.0);
            break;
        case InitKind::two_mode:
            f.at(1, 0) = Complex(0.0, -0.5);
            f.at(-1, 0) = Complex(0.0, 0.5);
            f.at(0, 2) = Complex(0.5, 0.0);
            f.at(0, -2) = Complex(0.5, 0.0);
            break;
        case InitKind::random_spectrum: {
            if (spec.k_lo < 1 || spec.k_hi < spec.k_lo)
                throw ConfigError("random band needs 1 <= k_lo <= k_hi");
            if (spec.k_hi > grid.dealias_cutoff())
                throw ConfigError("random band exceeds the dealiased range of the grid");
            const double beta = spec.beta.value_or(s0 + 1.0);
            f = random_band_field(grid, spec.k_lo, spec.k_hi, beta, seed);
            break;
        }
    }

    if (spec.target == NormTarget::none) {
        f.scale(spec.amplitude);
        return f;
    }

    double norm = 0.0;
    if (spec.target == NormTarget::besov_s0) {
        norm = besov_norm_2inf(build_filter_bank(grid), f, s0);
    } else {
        if (!(alpha > 0.5))
            throw ConfigError("critical Lebesgue target undefined for alpha <= 1/2");
        norm = lp_norm(to_physical(f), 2.0 / (2.0 * alpha - 1.0));
    }
    if (!(norm > 0.0)) throw ConfigError("initial profile has zero norm, cannot rescale");
    f.scale(spec.norm_target / norm);
    return f;
}

}  // namespace sqg
