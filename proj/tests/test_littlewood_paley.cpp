#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "sqg/errors.hpp"
#include "sqg/filter_bank.hpp"
#include "sqg/initial_data.hpp"
#include "sqg/operators.hpp"
#include "sqg/paraproduct.hpp"

using namespace sqg;

namespace {

double field_diff_l2(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d.axpy(-1.0, b);
    return l2_norm(d);
}

}  // namespace

TEST_CASE("cutoff profile endpoints and monotonicity") {
    CHECK(chi_profile(0.0) == 1.0);
    CHECK(chi_profile(0.3) == 1.0);
    CHECK(chi_profile(1.0) == 1.0);
    CHECK(chi_profile(2.0) == 0.0);
    CHECK(chi_profile(7.5) == 0.0);
    CHECK(chi_profile(1.5) == 0.5);

    double prev = 1.0;
    for (double r = 1.05; r < 2.0; r += 0.05) {
        const double v = chi_profile(r);
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
}

TEST_CASE("shell profile support and telescoping") {
    CHECK(shell_profile(3, 4.0) == doctest::Approx(0.0));
    CHECK(shell_profile(3, 16.0) == 0.0);
    CHECK(shell_profile(3, 6.0) > 0.0);

    for (double r : {1.0, 1.7, 3.2, 5.0, 12.0, 16.0}) {
        double sum = 0.0;
        for (int k = 0; k <= 4; ++k) sum += shell_profile(k, r);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("bank shape") {
    const DyadicFilterBank bank(GridSpec(64));
    CHECK(bank.k_min() == 0);
    CHECK(bank.k_max() == 5);
    CHECK(bank.num_shells() == 6);
    CHECK(bank.contains(0));
    CHECK(bank.contains(5));
    CHECK(!bank.contains(-1));
    CHECK(!bank.contains(6));
}

TEST_CASE("partition of unity is exact inside the covered ball") {
    const GridSpec grid(32);
    const DyadicFilterBank bank(grid);
    const double rmax = std::ldexp(1.0, bank.k_max());
    double worst = 0.0;
    for (int i2 = 0; i2 < grid.n; ++i2) {
        for (int i1 = 0; i1 < grid.n; ++i1) {
            const double x1 = grid.freq(i1), x2 = grid.freq(i2);
            const double r = std::hypot(x1, x2);
            if (r == 0.0 || r > rmax) continue;
            double sum = 0.0;
            for (int k = 0; k <= bank.k_max(); ++k)
                sum += bank.weights(k)[grid.flat(i1, i2)];
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("projection outside the bank range warns and returns zero") {
    const GridSpec grid(32);
    const DyadicFilterBank bank(grid);
    const SpectralField f = random_band_field(grid, 1.0, 8.0, 1.0, 4);

    std::vector<std::string> warnings;
    const SpectralField out = project_shell(bank, f, 17, &warnings);
    CHECK(l2_norm(out) == 0.0);
    CHECK(warnings.size() == 1);
}

TEST_CASE("low-pass projection keeps the mean for any level") {
    const GridSpec grid(32);
    SpectralField f = random_band_field(grid, 1.0, 8.0, 1.0, 5);
    f.set_mean(Complex(0.75, 0.0));

    const SpectralField only_mean = project_below(f, -3);
    CHECK(std::abs(only_mean.mean() - Complex(0.75, 0.0)) == 0.0);
    CHECK(only_mean.support_radius_inf() == 0);

    const SpectralField everything = project_below(f, 10);
    CHECK(field_diff_l2(everything, f) == 0.0);
}

TEST_CASE("radius-3 mode splits evenly between shells 1 and 2") {
    const GridSpec grid(32);
    const DyadicFilterBank bank(grid);
    SpectralField f(grid);
    f.at(3, 0) = Complex(0.0, -0.5);
    f.at(-3, 0) = Complex(0.0, 0.5);

    const double total = l2_norm(f);
    CHECK(shell_l2(bank, f, 1) == doctest::Approx(0.5 * total).epsilon(1e-15));
    CHECK(shell_l2(bank, f, 2) == doctest::Approx(0.5 * total).epsilon(1e-15));
    CHECK(shell_l2(bank, f, 0) == 0.0);
    CHECK(shell_l2(bank, f, 3) == 0.0);
}

TEST_CASE("decompose and reconstruct is exact for covered fields") {
    const GridSpec grid(32);
    const DyadicFilterBank bank(grid);
    SpectralField f = random_band_field(grid, 1.0, grid.dealias_cutoff(), 1.0, 6);
    f.set_mean(Complex(0.5, 0.0));

    const ShellDecomposition dec = decompose(bank, f);
    CHECK(int(dec.shells.size()) == bank.num_shells());
    const SpectralField rec = dec.reconstruct(grid);
    CHECK(field_diff_l2(rec, f) <= 1e-12 * l2_norm(f));
}

TEST_CASE("separated shells annihilate each other exactly") {
    const GridSpec grid(64);
    const DyadicFilterBank bank(grid);
    const SpectralField f = random_band_field(grid, 1.0, 21.0, 1.0, 7);
    for (int j = 0; j <= bank.k_max(); ++j) {
        const SpectralField pj = project_shell(bank, f, j);
        for (int k = 0; k <= bank.k_max(); ++k) {
            if (std::abs(k - j) < 2) continue;
            CHECK(l2_norm(project_shell(bank, pj, k)) == 0.0);
        }
    }
}

TEST_CASE("Besov norm of a pure shell mode") {
    const GridSpec grid(32);
    const DyadicFilterBank bank(grid);
    SpectralField f(grid);
    f.at(4, 0) = Complex(0.5, 0.0);
    f.at(-4, 0) = Complex(0.5, 0.0);

    const double s = 0.5;
    CHECK(besov_norm_2inf(bank, f, s) ==
          doctest::Approx(std::pow(2.0, 2.0 * s) * l2_norm(f)).epsilon(1e-14));

    SpectralField with_mean = f;
    with_mean.set_mean(Complex(9.0, 0.0));
    CHECK(besov_norm_2inf(bank, with_mean, s) ==
          doctest::Approx(besov_norm_2inf(bank, f, s)).epsilon(1e-15));
}

TEST_CASE("shell Sobolev weight for a single radius") {
    const GridSpec grid(32);
    const DyadicFilterBank bank(grid);
    SpectralField f(grid);
    f.at(3, 4) = Complex(0.25, 0.125);
    f.at(-3, -4) = std::conj(f.at(3, 4));

    for (int k = 2; k <= 3; ++k)
        CHECK(shell_sobolev_l2(bank, f, k, 1.0) ==
              doctest::Approx(5.0 * shell_l2(bank, f, k)).epsilon(1e-14));
}

TEST_CASE("Sobolev norms of a pure shell mode") {
    const GridSpec grid(32);
    const DyadicFilterBank bank(grid);
    SpectralField f(grid);
    f.at(4, 0) = Complex(0.5, 0.0);
    f.at(-4, 0) = Complex(0.5, 0.0);

    const double s = 0.7;
    const double hom = sobolev_norm(bank, f, s, Sobolev::homogeneous);
    CHECK(hom == doctest::Approx(std::pow(2.0, 2.0 * s) * l2_norm(f)).epsilon(1e-14));

    const double inhom = sobolev_norm(bank, f, s, Sobolev::inhomogeneous);
    CHECK(inhom == doctest::Approx(std::hypot(hom, l2_norm(f))).epsilon(1e-14));
}

TEST_CASE("padding embeds and restriction truncates") {
    const GridSpec small(32), big(64);
    const SpectralField f = random_band_field(small, 1.0, 10.0, 1.0, 8);

    const SpectralField padded = pad_to(f, big);
    CHECK(std::abs(padded.at(3, -2) - f.at(3, -2)) == 0.0);
    CHECK(l2_norm(padded) == doctest::Approx(l2_norm(f)).epsilon(1e-15));

    const SpectralField back = restrict_to(padded, small);
    CHECK(field_diff_l2(back, f) == 0.0);

    CHECK_THROWS_AS(pad_to(padded, small), ConfigError);
}

TEST_CASE("doubled-grid product matches an exact low-mode identity") {
    // sin(x1)^2 = 1/2 - cos(2 x1)/2.
    const GridSpec grid(32);
    SpectralField f(grid);
    f.at(1, 0) = Complex(0.0, -0.5);
    f.at(-1, 0) = Complex(0.0, 0.5);

    const SpectralField prod = product_on_doubled_grid(f, f);
    CHECK(prod.grid.n == 64);
    CHECK(std::abs(prod.mean() - Complex(0.5, 0.0)) <= 1e-15);
    CHECK(std::abs(prod.at(2, 0) - Complex(-0.25, 0.0)) <= 1e-15);
    CHECK(std::abs(prod.at(-2, 0) - Complex(-0.25, 0.0)) <= 1e-15);
    CHECK(std::abs(prod.at(1, 0)) <= 1e-15);

    double off = 0.0;
    for (int i2 = 0; i2 < prod.grid.n; ++i2)
        for (int i1 = 0; i1 < prod.grid.n; ++i1) {
            const int x1 = prod.grid.freq(i1), x2 = prod.grid.freq(i2);
            if (x2 == 0 && (x1 == 0 || x1 == 2 || x1 == -2)) continue;
            off = std::max(off, std::abs(prod.c[prod.grid.flat(i1, i2)]));
        }
    CHECK(off <= 1e-15);
}

TEST_CASE("paraproduct terms sum to the projected product") {
    const GridSpec grid(32);
    const SpectralField f = random_band_field(grid, 1.0, 10.0, 1.0, 21);
    const SpectralField g = random_band_field(grid, 1.0, 10.0, 1.0, 22);

    const ParaproductSplitter split(f, g);
    const double total = l2_norm(product_on_doubled_grid(f, g));
    for (int k = split.bank().k_min(); k <= split.bank().k_max(); ++k) {
        const ParaproductTerms terms = split.term(k);
        SpectralField sum = terms.hh;
        sum.axpy(1.0, terms.hl);
        sum.axpy(1.0, terms.lh);
        const SpectralField ref = split.projected_product(k);
        CHECK(field_diff_l2(sum, ref) <=
              1e-12 * std::max(l2_norm(ref), 1e-3 * total));
    }

    const ParaproductTerms one = paraproduct_split(f, g, 3);
    const ParaproductTerms same = split.term(3);
    CHECK(field_diff_l2(one.hh, same.hh) == 0.0);
    CHECK(field_diff_l2(one.hl, same.hl) == 0.0);
    CHECK(field_diff_l2(one.lh, same.lh) == 0.0);
}

TEST_CASE("transport probe matches the one-shot helpers") {
    const GridSpec grid(32);
    const DyadicFilterBank bank(grid);
    const SpectralField psi = random_band_field(grid, 1.0, 8.0, 1.5, 23);

    const TransportProbe probe(bank, psi);
    const double s = 0.5, p = 4.0, q = 4.0;
    for (int k = 1; k <= 3; ++k) {
        CHECK(probe.integral(k) ==
              doctest::Approx(shell_transport_integral(bank, psi, k)).epsilon(1e-14));
        CHECK(probe.bound(k, s, p, q) ==
              doctest::Approx(shell_transport_bound(bank, psi, k, s, p, q))
                  .epsilon(1e-14));
        CHECK(probe.bound(k, s, p, q) > 0.0);
    }

    CHECK_THROWS_AS(probe.bound(1, 1.5, 4.0, 4.0), ConfigError);
    CHECK_THROWS_AS(probe.bound(1, 0.5, 3.0, 4.0), ConfigError);
    CHECK_THROWS_AS(probe.bound(1, 0.5, 2.0, INFINITY), ConfigError);
}
