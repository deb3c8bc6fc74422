#ifndef SQG_PARAPRODUCT_HPP
#define SQG_PARAPRODUCT_HPP

#include <memory>

#include "sqg/filter_bank.hpp"

namespace sqg {

// Zero-padding embed into a larger grid (frequencies preserved), and the
// reverse truncation. The target grid must be able to hold the source band.
SpectralField pad_to(const SpectralField& f, const GridSpec& big);
SpectralField restrict_to(const SpectralField& f, const GridSpec& small);

// Exact product f*g on the doubled grid: a product of two n-grid fields has
// per-axis frequencies in [-n, n-2], all representable at 2n, so a single
// doubling is always alias-free.
SpectralField product_on_doubled_grid(const SpectralField& f, const SpectralField& g);

struct ParaproductTerms {
    SpectralField hh;  // high-high: comparable shells of f and g
    SpectralField hl;  // high f against strictly lower g
    SpectralField lh;  // high g against strictly lower f
};

/// Three-term interaction split of P_k(fg).
///
/// All products are formed on the doubled grid, whose filter bank covers any
/// source-grid field entirely, and the three returned fields live there.
/// For every k in the doubled bank's range,
///     hh + hl + lh = P_k(fg)    exactly:
/// the split telescopes fg - mean(f)mean(g) into
///     sum_l  P_l f * sum_{|m-l|<=3} P_m g          (hh, before P_k)
///   + sum_l  P_l f * P_{<= l-4} g                  (hl)
///   + sum_m  P_m g * P_{<= m-4} f                  (lh)
/// and P_k annihilates every hl/lh term with |l-k| > 3 and every hh term
/// with l < k-5 (exact support arithmetic of the cutoff profiles), so the
/// high-low windows reduce to the seven shells around k.
class ParaproductSplitter {
public:
    // Both fields must share a grid. The k-independent work (shell images,
    // low-pass products, one transform per retained term) happens here.
    ParaproductSplitter(const SpectralField& f, const SpectralField& g);
    ~ParaproductSplitter();

    const GridSpec& product_grid() const;
    const DyadicFilterBank& bank() const;

    ParaproductTerms term(int k) const;

    // P_k(fg) on the product grid, for residual checks.
    SpectralField projected_product(int k) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ParaproductTerms paraproduct_split(const SpectralField& f, const SpectralField& g, int k);

// Measures how the shell transport integral compares against the
// product-of-norms quantity that bounds it. Shares the expensive
// field-level work (the drift u . grad psi on the doubled grid, physical
// images, whole-field norms) across shell indices and exponent sets.
class TransportProbe {
public:
    TransportProbe(const DyadicFilterBank& bank, const SpectralField& psi);
    ~TransportProbe();
    TransportProbe(TransportProbe&&) noexcept;
    TransportProbe& operator=(TransportProbe&&) noexcept;

    // |integral of P_k psi_k * (u . grad psi) dx| with u the geostrophic
    // velocity of psi; the cubic integrand is evaluated alias-free on the
    // doubled grid.
    double integral(int k) const;

    // Scale-weighted product of norms (constant excluded):
    // 2^{k(1-s)} ||psi_k||_p (sum_{l>=k-3} 2^{-s(l-k)} ||Lambda^s psi_l||_2)
    // ||psi||_q. Requires 0 < s <= 1 and a Hoelder pair 1/p + 1/q = 1/2 with
    // 2 < p, q < infinity.
    double bound(int k, double s, double p, double q) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot conveniences over TransportProbe.
double shell_transport_bound(const DyadicFilterBank& bank, const SpectralField& psi,
                             int k, double s, double p, double q);
double shell_transport_integral(const DyadicFilterBank& bank,
                                const SpectralField& psi, int k);

}  // namespace sqg

#endif
