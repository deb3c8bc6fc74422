#ifndef SQG_GRID_HPP
#define SQG_GRID_HPP

#include <cmath>
#include <cstddef>

#include "sqg/errors.hpp"

namespace sqg {

/// Uniform n x n collocation grid on the periodic square [0, 2pi)^2.
///
/// Spectral storage convention: full complex array of n*n Fourier
/// coefficients c(xi) such that f(x) = sum_xi c(xi) exp(i xi.x), with
/// integer frequencies xi_j in [-n/2, n/2). Row-major layout with xi1
/// fastest: flat index = idx2 * n + idx1, where idx maps to the frequency
/// by the usual FFT wrap (idx < n/2 -> idx, else idx - n).
///
/// Parseval on this grid: ||f||_L2^2 = (2pi)^2 sum_xi |c(xi)|^2.
struct GridSpec {
    int n = 0;
    double dealias_fraction = 2.0 / 3.0;

    GridSpec() = default;
    GridSpec(int n_, double fraction = 2.0 / 3.0)
        : n(n_), dealias_fraction(fraction) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw ConfigError("grid size must be a power of two, n >= 16");
        if (!(fraction > 0.0) || fraction > 1.0)
            throw ConfigError("dealias fraction must lie in (0, 1]");
    }

    std::size_t num_modes() const { return std::size_t(n) * std::size_t(n); }
    double dx() const { return 2.0 * M_PI / n; }

    // Frequency of a storage index along either axis.
    int freq(int idx) const { return idx < n / 2 ? idx : idx - n; }

    // Storage index of an integer frequency (must lie in [-n/2, n/2)).
    int index_of(int xi) const { return xi >= 0 ? xi : xi + n; }

    std::size_t flat(int idx1, int idx2) const {
        return std::size_t(idx2) * n + idx1;
    }

    // Largest retained per-axis frequency magnitude under the 2/3-type rule:
    // coefficients with max(|xi1|, |xi2|) > dealias_fraction * n/2 are zeroed.
    int dealias_cutoff() const {
        return static_cast<int>(std::floor(dealias_fraction * (n / 2)));
    }

    bool operator==(const GridSpec& o) const {
        return n == o.n && dealias_fraction == o.dealias_fraction;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

}  // namespace sqg

#endif
