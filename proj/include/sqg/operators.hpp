#ifndef SQG_OPERATORS_HPP
#define SQG_OPERATORS_HPP

#include "sqg/field.hpp"

namespace sqg {

// Parseval constant tying coefficients to L2 on [0,2pi)^2:
// ||f||_L2^2 = kParseval * sum |c(xi)|^2.
inline constexpr double kParseval = 4.0 * M_PI * M_PI;

// Multiplier |xi|^s. The mean mode is multiplied by zero whenever s != 0
// (|0|^s := 0); for s = 0 the operator is the identity, mean included.
SpectralField lambda_power(const SpectralField& f, double s);

// Dissipation operator |xi|^{2 alpha}, alpha in [0, 1]. Out-of-range alpha
// is a configuration error. alpha = 0 zeroes only the mean mode.
SpectralField fractional_laplacian(const SpectralField& f, double alpha);

// Riesz transform component j in {1, 2}, multiplier -i xi_j / |xi|.
// Annihilates the mean mode and the per-axis Nyquist lines (an odd imaginary
// multiplier cannot keep a self-conjugate mode real).
SpectralField riesz_transform(const SpectralField& f, int j);

// Partial derivative d/dx_j, multiplier i xi_j (Nyquist lines zeroed).
SpectralField gradient_component(const SpectralField& f, int j);

// u = (-R2 theta, R1 theta); divergence-free by construction.
VelocityField geostrophic_velocity(const SpectralField& theta);

// Zero all coefficients with max(|xi1|, |xi2|) above the grid's dealias
// cutoff. The mean mode always survives.
void dealias(SpectralField& f);

// L^p node quadrature, p in [1, inf]: (mean of |g|^p * (2pi)^2)^{1/p}, or the
// max for p = inf. Exact at p = 2 (discrete Parseval); a quadrature
// approximation for other p. p < 1 is a configuration error.
double lp_norm(const PhysicalField& g, double p);

// ||f||_L2 from the coefficients (exact, no transform).
double l2_norm(const SpectralField& f);

// integral of f*g over the square, from coefficients: kParseval * sum
// c_f(xi) conj(c_g(xi)) (real part; both fields real).
double l2_inner(const SpectralField& f, const SpectralField& g);

// || d1 u1 + d2 u2 ||_L2 -- diagnostic for the divergence-free invariant.
double divergence_l2(const VelocityField& u);

}  // namespace sqg

#endif
