#include "sqg/paraproduct.hpp"

#include <cmath>
#include <map>
#include <optional>

#include "sqg/operators.hpp"
#include "sqg/transform.hpp"

namespace sqg {

SpectralField pad_to(const SpectralField& f, const GridSpec& big) {
    if (big.n < f.grid.n)
        throw ConfigError("pad target grid smaller than the source band");
    SpectralField out(big);
    const int n = f.grid.n;
    for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1)
            out.at(f.grid.freq(i1), f.grid.freq(i2)) = f.c[f.grid.flat(i1, i2)];
    return out;
}

SpectralField restrict_to(const SpectralField& f, const GridSpec& small) {
    if (small.n > f.grid.n)
        throw ConfigError("restriction target grid larger than the source");
    SpectralField out(small);
    const int n = small.n;
    for (int i2 = 0; i2 < n; ++i2)
        for (int i1 = 0; i1 < n; ++i1)
            out.c[small.flat(i1, i2)] = f.at(small.freq(i1), small.freq(i2));
    return out;
}

SpectralField product_on_doubled_grid(const SpectralField& f, const SpectralField& g) {
    if (f.grid != g.grid) throw ConfigError("product factors live on different grids");
    const GridSpec big(2 * f.grid.n, f.grid.dealias_fraction);
    const PhysicalField pf = to_physical(pad_to(f, big));
    const PhysicalField pg = to_physical(pad_to(g, big));
    PhysicalField prod(big);
    for (std::size_t i = 0; i < prod.v.size(); ++i) prod.v[i] = pf.v[i] * pg.v[i];
    return to_spectral(prod);
}

namespace {

PhysicalField multiply(const PhysicalField& a, const PhysicalField& b) {
    PhysicalField out(a.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
    return out;
}

SpectralField masked(const DyadicFilterBank& bank, const SpectralField& f, int k) {
    return project_shell(bank, f, k);
}

}  // namespace

struct ParaproductSplitter::Impl {
    GridSpec big;
    DyadicFilterBank bank;
    SpectralField prod;                    // fg, exact on the doubled grid
    SpectralField hh_base;                 // sum_l f_l * S_l g before P_k
    std::vector<SpectralField> term_f;     // f_l * P_{<=l-4} g, spectral
    std::vector<SpectralField> term_g;     // g_m * P_{<=m-4} f, spectral

    Impl(const SpectralField& f, const SpectralField& g)
        : big(2 * f.grid.n, f.grid.dealias_fraction), bank(big) {
        const SpectralField F = pad_to(f, big);
        const SpectralField G = pad_to(g, big);
        const int K = bank.k_max();

        std::vector<PhysicalField> fs(K + 1), gs(K + 1);
        for (int l = 0; l <= K; ++l) {
            fs[l] = to_physical(masked(bank, F, l));
            gs[l] = to_physical(masked(bank, G, l));
        }

        // Cumulative low-pass images chi_M; for M >= K the cutoff already
        // covers the padded band, so the full field stands in.
        const int Mlo = -4;
        std::vector<PhysicalField> flow(K - Mlo + 1), glow(K - Mlo + 1);
        for (int M = Mlo; M < K; ++M) {
            flow[M - Mlo] = to_physical(project_below(F, M));
            glow[M - Mlo] = to_physical(project_below(G, M));
        }
        flow[K - Mlo] = to_physical(F);
        glow[K - Mlo] = to_physical(G);
        auto low_f = [&](int M) -> const PhysicalField& {
            return flow[std::min(M, K) - Mlo];
        };
        auto low_g = [&](int M) -> const PhysicalField& {
            return glow[std::min(M, K) - Mlo];
        };

        PhysicalField hh_phys(big);
        for (int l = 0; l <= K; ++l) {
            // S_l = shells l-3 .. l+3 as a low-pass difference.
            const PhysicalField& hi = low_g(l + 3);
            const PhysicalField& lo = low_g(l - 4);
            for (std::size_t i = 0; i < hh_phys.v.size(); ++i)
                hh_phys.v[i] += fs[l].v[i] * (hi.v[i] - lo.v[i]);
        }
        hh_base = to_spectral(hh_phys);

        term_f.reserve(K + 1);
        term_g.reserve(K + 1);
        for (int l = 0; l <= K; ++l) {
            term_f.push_back(to_spectral(multiply(fs[l], low_g(l - 4))));
            term_g.push_back(to_spectral(multiply(gs[l], low_f(l - 4))));
        }

        PhysicalField pf = to_physical(F);
        PhysicalField pg = to_physical(G);
        prod = to_spectral(multiply(pf, pg));
    }
};

ParaproductSplitter::ParaproductSplitter(const SpectralField& f, const SpectralField& g) {
    if (f.grid != g.grid) throw ConfigError("paraproduct factors live on different grids");
    impl_ = std::make_unique<Impl>(f, g);
}

ParaproductSplitter::~ParaproductSplitter() = default;

const GridSpec& ParaproductSplitter::product_grid() const { return impl_->big; }
const DyadicFilterBank& ParaproductSplitter::bank() const { return impl_->bank; }

ParaproductTerms ParaproductSplitter::term(int k) const {
    const auto& bank = impl_->bank;
    const int K = bank.k_max();
    ParaproductTerms t;
    t.hh = project_shell(bank, impl_->hh_base, k);

    SpectralField hl_sum(impl_->big), lh_sum(impl_->big);
    for (int l = std::max(0, k - 3); l <= std::min(K, k + 3); ++l) {
        hl_sum.axpy(1.0, impl_->term_f[l]);
        lh_sum.axpy(1.0, impl_->term_g[l]);
    }
    t.hl = project_shell(bank, hl_sum, k);
    t.lh = project_shell(bank, lh_sum, k);
    return t;
}

SpectralField ParaproductSplitter::projected_product(int k) const {
    return project_shell(impl_->bank, impl_->prod, k);
}

ParaproductTerms paraproduct_split(const SpectralField& f, const SpectralField& g, int k) {
    return ParaproductSplitter(f, g).term(k);
}

struct TransportProbe::Impl {
    DyadicFilterBank bank;
    SpectralField psi;
    GridSpec big;
    mutable std::optional<SpectralField> drift;       // u . grad psi, spectral, 2n
    mutable std::optional<PhysicalField> whole_phys;  // psi in physical space
    mutable std::map<int, PhysicalField> shell_phys;  // P_k psi in physical space
    mutable std::map<double, double> whole_q;         // ||psi||_q cache

    Impl(const DyadicFilterBank& b, const SpectralField& f)
        : bank(b), psi(f), big(2 * f.grid.n, f.grid.dealias_fraction) {}

    const SpectralField& drift_field() const {
        if (!drift) {
            const VelocityField u = geostrophic_velocity(psi);
            const PhysicalField pu1 = to_physical(pad_to(u.u1, big));
            const PhysicalField pu2 = to_physical(pad_to(u.u2, big));
            const PhysicalField pgx = to_physical(pad_to(gradient_component(psi, 1), big));
            const PhysicalField pgy = to_physical(pad_to(gradient_component(psi, 2), big));
            PhysicalField w(big);
            for (std::size_t i = 0; i < w.v.size(); ++i)
                w.v[i] = pu1.v[i] * pgx.v[i] + pu2.v[i] * pgy.v[i];
            drift = to_spectral(w);
        }
        return *drift;
    }
};

TransportProbe::TransportProbe(const DyadicFilterBank& bank, const SpectralField& psi)
    : impl_(std::make_unique<Impl>(bank, psi)) {}

TransportProbe::~TransportProbe() = default;
TransportProbe::TransportProbe(TransportProbe&&) noexcept = default;
TransportProbe& TransportProbe::operator=(TransportProbe&&) noexcept = default;

double TransportProbe::integral(int k) const {
    if (!impl_->bank.contains(k)) throw ConfigError("shell index outside bank range");
    // P_k applied twice to psi, then tested against the drift.
    const SpectralField probe =
        project_shell(impl_->bank, project_shell(impl_->bank, impl_->psi, k), k);
    return std::abs(l2_inner(pad_to(probe, impl_->big), impl_->drift_field()));
}

double TransportProbe::bound(int k, double s, double p, double q) const {
    if (!(s > 0.0) || s > 1.0)
        throw ConfigError("shell transport bound needs 0 < s <= 1");
    if (!(p > 2.0) || !(q > 2.0) || std::isinf(p) || std::isinf(q))
        throw ConfigError("shell transport bound needs 2 < p, q < infinity");
    if (std::abs(1.0 / p + 1.0 / q - 0.5) > 1e-9)
        throw ConfigError("shell transport bound needs 1/p + 1/q = 1/2");
    const DyadicFilterBank& bank = impl_->bank;
    if (!bank.contains(k)) throw ConfigError("shell index outside bank range");

    auto shell_it = impl_->shell_phys.find(k);
    if (shell_it == impl_->shell_phys.end())
        shell_it = impl_->shell_phys
                       .emplace(k, to_physical(project_shell(bank, impl_->psi, k)))
                       .first;
    const double shell_p = lp_norm(shell_it->second, p);

    double tail = 0.0;
    for (int l = std::max(0, k - 3); l <= bank.k_max(); ++l)
        tail += std::pow(2.0, -s * (l - k)) * shell_sobolev_l2(bank, impl_->psi, l, s);

    auto q_it = impl_->whole_q.find(q);
    if (q_it == impl_->whole_q.end()) {
        if (!impl_->whole_phys) impl_->whole_phys = to_physical(impl_->psi);
        q_it = impl_->whole_q.emplace(q, lp_norm(*impl_->whole_phys, q)).first;
    }
    return std::pow(2.0, k * (1.0 - s)) * shell_p * tail * q_it->second;
}

double shell_transport_bound(const DyadicFilterBank& bank, const SpectralField& psi,
                             int k, double s, double p, double q) {
    return TransportProbe(bank, psi).bound(k, s, p, q);
}

double shell_transport_integral(const DyadicFilterBank& bank,
                                const SpectralField& psi, int k) {
    return TransportProbe(bank, psi).integral(k);
}

}  // namespace sqg
