#include "sqg/exponents.hpp"

#include <cmath>
#include <limits>

namespace sqg {

ExponentSet compute_exponents(double alpha) {
    if (!(alpha >= 0.0) || alpha > 1.0)
        throw ConfigError("alpha must lie in [0, 1]");

    ExponentSet e;
    e.alpha = alpha;
    if (alpha < 0.5)
        e.regime = Regime::supercritical;
    else if (alpha == 0.5)
        e.regime = Regime::critical;
    else if (alpha < 0.75)
        e.regime = Regime::subcritical_low;
    else
        e.regime = Regime::subcritical_high;

    e.in_hypothesis = alpha > 0.5 && alpha < 1.0;
    e.s0 = 2.0 - 2.0 * alpha;

    if (alpha > 0.5) {
        e.p_critical = 2.0 / (2.0 * alpha - 1.0);
        e.besov_bound_power = std::max(2.0, 1.0 / (2.0 * alpha - 1.0));
    }
    if (alpha > 0.5 && alpha < 1.0) {
        e.holder_p = 1.0 / (alpha - 0.5);
        e.holder_q = 1.0 / (1.0 - alpha);
    }
    if (alpha > 0.5 && alpha < 0.75) {
        const double gamma = (3.0 - 4.0 * alpha) / (2.0 - 2.0 * alpha);
        e.gn_gamma = gamma;
        e.gn_a = (2.0 - 2.0 * alpha) * (3.0 - 4.0 * alpha) / (2.0 * alpha - 1.0);
    }
    return e;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::supercritical: return "supercritical";
        case Regime::critical: return "critical";
        case Regime::subcritical_low: return "subcritical_low";
        case Regime::subcritical_high: return "subcritical_high";
    }
    return "unknown";
}

bool check_uniqueness_exponents(double alpha, double p, double q, double tol) {
    if (!(alpha > 0.5) || alpha > 1.0) return false;
    if (!(p >= 1.0) || !(q > 1.0)) return false;
    const double aq = std::isinf(q) ? 0.0 : alpha / q;
    return std::abs(1.0 / p + aq - (alpha - 0.5)) <= tol;
}

std::pair<double, double> distinguished_uniqueness_pair(double alpha) {
    if (!(alpha > 0.5) || alpha > 1.0)
        throw ConfigError("uniqueness pair defined for 1/2 < alpha <= 1");
    return {1.0 / (alpha - 0.5), std::numeric_limits<double>::infinity()};
}

}  // namespace sqg
