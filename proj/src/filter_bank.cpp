#include "sqg/filter_bank.hpp"

#include <cmath>

#include "sqg/operators.hpp"

namespace sqg {

double chi_profile(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = std::exp(-1.0 / (2.0 - r));
    const double b = std::exp(-1.0 / (r - 1.0));
    return a / (a + b);
}

double shell_profile(int k, double r) {
    return chi_profile(std::ldexp(r, -k)) - chi_profile(std::ldexp(r, -k + 1));
}

DyadicFilterBank::DyadicFilterBank(const GridSpec& grid) : grid_(grid) {
    k_max_ = static_cast<int>(std::ceil(std::log2(grid.n / 2)));
    tables_.resize(k_max_ + 1);
    const int n = grid.n;
    for (int k = 0; k <= k_max_; ++k) {
        auto& tab = tables_[k];
        tab.resize(grid.num_modes());
        for (int i2 = 0; i2 < n; ++i2) {
            const double x2 = grid.freq(i2);
            for (int i1 = 0; i1 < n; ++i1) {
                const double x1 = grid.freq(i1);
                const double r = std::sqrt(x1 * x1 + x2 * x2);
                tab[grid.flat(i1, i2)] = shell_profile(k, r);
            }
        }
    }
}

DyadicFilterBank build_filter_bank(const GridSpec& grid) {
    return DyadicFilterBank(grid);
}

SpectralField project_shell(const DyadicFilterBank& bank, const SpectralField& f,
                            int k, std::vector<std::string>* warnings) {
    if (f.grid != bank.grid())
        throw ConfigError("filter bank and field grids disagree");
    SpectralField out(f.grid);
    if (!bank.contains(k)) {
        if (warnings)
            warnings->push_back("shell index " + std::to_string(k) +
                                " outside bank range [0, " +
                                std::to_string(bank.k_max()) + "]; empty projection");
        return out;
    }
    const auto& w = bank.weights(k);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = w[i] * f.c[i];
    return out;
}

SpectralField project_below(const SpectralField& f, int k) {
    SpectralField out(f.grid);
    const int n = f.grid.n;
    for (int i2 = 0; i2 < n; ++i2) {
        const double x2 = f.grid.freq(i2);
        for (int i1 = 0; i1 < n; ++i1) {
            const double x1 = f.grid.freq(i1);
            const double r = std::sqrt(x1 * x1 + x2 * x2);
            const std::size_t idx = f.grid.flat(i1, i2);
            out.c[idx] = chi_profile(std::ldexp(r, -k)) * f.c[idx];
        }
    }
    return out;
}

double shell_l2(const DyadicFilterBank& bank, const SpectralField& f, int k) {
    if (!bank.contains(k)) return 0.0;
    const auto& w = bank.weights(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.c.size(); ++i)
        acc += w[i] * w[i] * std::norm(f.c[i]);
    return std::sqrt(kParseval * acc);
}

double shell_sobolev_l2(const DyadicFilterBank& bank, const SpectralField& f,
                        int k, double s) {
    if (!bank.contains(k)) return 0.0;
    const auto& w = bank.weights(k);
    const GridSpec& g = f.grid;
    const int n = g.n;
    double acc = 0.0;
    for (int i2 = 0; i2 < n; ++i2) {
        const double x2 = g.freq(i2);
        for (int i1 = 0; i1 < n; ++i1) {
            const double x1 = g.freq(i1);
            const std::size_t idx = g.flat(i1, i2);
            if (w[idx] == 0.0) continue;
            const double r2 = x1 * x1 + x2 * x2;
            if (r2 == 0.0) continue;
            acc += std::pow(r2, s) * w[idx] * w[idx] * std::norm(f.c[idx]);
        }
    }
    return std::sqrt(kParseval * acc);
}

SpectralField ShellDecomposition::reconstruct(const GridSpec& grid) const {
    SpectralField out(grid);
    for (const auto& piece : shells) out.axpy(1.0, piece);
    out.set_mean(out.mean() + mean);
    return out;
}

ShellDecomposition decompose(const DyadicFilterBank& bank, const SpectralField& f) {
    ShellDecomposition d;
    d.mean = f.mean();
    d.shells.reserve(bank.num_shells());
    for (int k = 0; k <= bank.k_max(); ++k)
        d.shells.push_back(project_shell(bank, f, k));
    return d;
}

double besov_norm_2inf(const DyadicFilterBank& bank, const SpectralField& f, double s) {
    double best = 0.0;
    for (int k = 0; k <= bank.k_max(); ++k)
        best = std::max(best, std::pow(2.0, k * s) * shell_l2(bank, f, k));
    return best;
}

double sobolev_norm(const DyadicFilterBank& bank, const SpectralField& f,
                    double s, Sobolev kind) {
    double acc = 0.0;
    for (int k = 0; k <= bank.k_max(); ++k) {
        const double nk = shell_l2(bank, f, k);
        acc += std::pow(2.0, 2.0 * k * s) * nk * nk;
    }
    if (kind == Sobolev::inhomogeneous) {
        const double l2 = l2_norm(f);
        acc += l2 * l2;
    }
    return std::sqrt(acc);
}

}  // namespace sqg
