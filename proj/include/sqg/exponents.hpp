#pragma once

#include <optional>
#include <string>

#include "sqg/errors.hpp"

namespace sqg {

enum class Regime {
    supercritical,    // alpha < 1/2
    critical,         // alpha == 1/2
    subcritical_low,  // 1/2 < alpha < 3/4
    subcritical_high, // 3/4 <= alpha
};

// Derived exponents attached to a dissipation strength alpha.
//
//   s0         = 2 - 2*alpha   regularity level the a-priori bounds live at
//   p_critical = 2/(2*alpha-1) scale-invariant Lebesgue exponent (alpha > 1/2)
//   holder_p/q Lebesgue pair with 1/p + 1/q = 1/2 matched to the shell
//              transport estimate: p = 1/(alpha-1/2), q = 1/(1-alpha)
//   gn_gamma   interpolation weight for the L^q shell bound via L^2 and the
//              s0-level seminorm (only when 1/2 < alpha < 3/4)
//   gn_a       companion power on the conserved quantity in the same bound
//   besov_bound_power = max(2, 1/(2*alpha-1)), the power M with
//              J(T) <= 2 J(0) + C ||theta0||_{p_critical}^M
struct ExponentSet {
    double alpha = 0.0;
    Regime regime = Regime::supercritical;
    bool in_hypothesis = false;  // 1/2 < alpha < 1
    double s0 = 0.0;
    std::optional<double> p_critical;
    std::optional<double> holder_p;
    std::optional<double> holder_q;
    std::optional<double> gn_gamma;
    std::optional<double> gn_a;
    std::optional<double> besov_bound_power;
};

ExponentSet compute_exponents(double alpha);

std::string regime_name(Regime r);

// True when (p, q) satisfies 1/p + alpha/q = alpha - 1/2 with p >= 1 and
// q > 1 (q may be infinite), the admissible range for the uniqueness class.
bool check_uniqueness_exponents(double alpha, double p, double q, double tol = 1e-12);

// The endpoint pair (p, q) = (1/(alpha - 1/2), infinity).
std::pair<double, double> distinguished_uniqueness_pair(double alpha);

}  // namespace sqg
