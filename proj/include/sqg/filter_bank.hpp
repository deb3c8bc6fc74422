#ifndef SQG_FILTER_BANK_HPP
#define SQG_FILTER_BANK_HPP

#include <string>
#include <vector>

#include "sqg/field.hpp"

namespace sqg {

// Radial cutoff profile: 1 on [0,1], 0 on [2,inf), smooth and strictly
// decreasing in between, built from the classical exp(-1/t) bump. Exactly 0
// at r = 2 and exactly 1 at r = 1.
double chi_profile(double r);

// Dyadic shell weight phi_k(r) = chi(r/2^k) - chi(r/2^{k-1}), supported on
// the open annulus (2^{k-1}, 2^{k+1}).
double shell_profile(int k, double r);

/// Dyadic filter bank over a fixed grid.
///
/// Shells k = 0 .. k_max with k_max = ceil(log2(n/2)); the shell weights sum
/// to 1 at every nonzero frequency with |xi| <= 2^{k_max} (grid corner
/// frequencies beyond that radius are outside the partition). Weight tables
/// are precomputed per shell; the bank is immutable after construction and
/// safe to share across threads.
class DyadicFilterBank {
public:
    explicit DyadicFilterBank(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int k_min() const { return 0; }
    int k_max() const { return k_max_; }
    int num_shells() const { return k_max_ + 1; }
    bool contains(int k) const { return k >= 0 && k <= k_max_; }

    // phi_k weight table over the grid (flat layout).
    const std::vector<double>& weights(int k) const { return tables_[k]; }

private:
    GridSpec grid_;
    int k_max_;
    std::vector<std::vector<double>> tables_;
};

DyadicFilterBank build_filter_bank(const GridSpec& grid);

// P_k f. For k outside the bank range, returns the zero field and, when a
// sink is provided, records a warning string.
SpectralField project_shell(const DyadicFilterBank& bank, const SpectralField& f,
                            int k, std::vector<std::string>* warnings = nullptr);

// P_{<=k} f, multiplier chi(|xi|/2^k); includes the mean mode for any k.
// Accepts any integer k (k <= -1 keeps only the mean).
SpectralField project_below(const SpectralField& f, int k);

// ||P_k f||_L2 straight from the coefficients.
double shell_l2(const DyadicFilterBank& bank, const SpectralField& f, int k);

// ||Lambda^s P_k f||_L2 from the coefficients.
double shell_sobolev_l2(const DyadicFilterBank& bank, const SpectralField& f,
                        int k, double s);

/// All shells of a field plus the mean remainder; sums back to f exactly for
/// fields supported inside the partition region.
struct ShellDecomposition {
    std::vector<SpectralField> shells;
    Complex mean;

    SpectralField reconstruct(const GridSpec& grid) const;
};

ShellDecomposition decompose(const DyadicFilterBank& bank, const SpectralField& f);

// sup_k 2^{ks} ||P_k f||_L2; the mean mode never contributes.
double besov_norm_2inf(const DyadicFilterBank& bank, const SpectralField& f, double s);

// Shell-sum Sobolev norms. The homogeneous variant is
// (sum_k 2^{2ks} ||P_k f||_L2^2)^{1/2}; the inhomogeneous adds the full L2
// norm (mean included) to the shell sum.
enum class Sobolev { homogeneous, inhomogeneous };
double sobolev_norm(const DyadicFilterBank& bank, const SpectralField& f,
                    double s, Sobolev kind);

}  // namespace sqg

#endif
