#ifndef SQG_FIELD_HPP
#define SQG_FIELD_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar field. Conjugate symmetry
/// c(-xi) = conj(c(xi)) is an invariant maintained by the producers
/// (generators, multipliers, transforms), not re-checked on every access.
struct SpectralField {
    GridSpec grid;
    std::vector<Complex> c;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), c(g.num_modes()) {}

    Complex& at(int xi1, int xi2) {
        return c[grid.flat(grid.index_of(xi1), grid.index_of(xi2))];
    }
    Complex at(int xi1, int xi2) const {
        return c[grid.flat(grid.index_of(xi1), grid.index_of(xi2))];
    }

    Complex mean() const { return c[0]; }
    void set_mean(Complex v) { c[0] = v; }

    void scale(double a) {
        for (auto& z : c) z *= a;
    }

    // this += a * other
    void axpy(double a, const SpectralField& other) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += a * other.c[i];
    }

    // Enforce conjugate symmetry exactly: c(xi) <- (c(xi) + conj(c(-xi)))/2.
    void symmetrize() {
        const int n = grid.n;
        for (int i2 = 0; i2 < n; ++i2) {
            const int j2 = (n - i2) % n;
            for (int i1 = 0; i1 < n; ++i1) {
                const int j1 = (n - i1) % n;
                const std::size_t a = grid.flat(i1, i2);
                const std::size_t b = grid.flat(j1, j2);
                if (a > b) continue;
                const Complex half = 0.5 * (c[a] + std::conj(c[b]));
                c[a] = half;
                c[b] = std::conj(half);
            }
        }
    }

    bool all_finite() const {
        for (const auto& z : c)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    // Largest per-axis frequency magnitude carrying relative weight above tol.
    int support_radius_inf(double tol = 1e-14) const {
        double peak = 0.0;
        for (const auto& z : c) peak = std::max(peak, std::abs(z));
        if (peak == 0.0) return 0;
        int r = 0;
        const int n = grid.n;
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1) {
                if (std::abs(c[grid.flat(i1, i2)]) <= tol * peak) continue;
                const int m = std::max(std::abs(grid.freq(i1)), std::abs(grid.freq(i2)));
                r = std::max(r, m);
            }
        return r;
    }
};

/// Real node values, same ordering as the physical FFT layout
/// (x1 fastest): value(j1, j2) at x = (2pi j1/n, 2pi j2/n).
struct PhysicalField {
    GridSpec grid;
    std::vector<double> v;

    PhysicalField() = default;
    explicit PhysicalField(const GridSpec& g) : grid(g), v(g.num_modes(), 0.0) {}

    double& at(int j1, int j2) { return v[grid.flat(j1, j2)]; }
    double at(int j1, int j2) const { return v[grid.flat(j1, j2)]; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }

    bool all_finite() const {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

/// Divergence-free velocity (u1, u2) in spectral form.
struct VelocityField {
    SpectralField u1;
    SpectralField u2;
};

}  // namespace sqg

#endif
