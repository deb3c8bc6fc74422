#include "sqg/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>

#include "sqg/filter_bank.hpp"
#include "sqg/operators.hpp"
#include "sqg/transform.hpp"

namespace sqg {

void SimConfig::validate(bool enforce_hypothesis) const {
    if (!(alpha >= 0.0) || alpha > 1.0) throw ConfigError("alpha must lie in [0, 1]");
    if (!(kappa >= 0.0)) throw ConfigError("kappa must be nonnegative");
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(dt_max > 0.0)) throw ConfigError("dt_max must be positive");
    if (!(cfl_number > 0.0)) throw ConfigError("cfl_number must be positive");
    if (diagnostic_stride < 1) throw ConfigError("diagnostic_stride must be >= 1");
    if (enforce_hypothesis && !in_hypothesis() && !allow_out_of_hypothesis)
        throw ConfigError(
            "parameters leave the regime 1/2 < alpha < 1, kappa > 0 covered by the "
            "a-priori bounds; set allow_out_of_hypothesis to run anyway");
}

std::uint64_t SimConfig::param_hash() const {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%d|%.17g|%.17g|%.17g|%.17g|%d|%.17g|%.17g|%.17g|%d|%llu|%d|%d|%d|%.17g|%d|%.17g|%.17g",
                  grid.n, grid.dealias_fraction, alpha, kappa, t_end,
                  static_cast<int>(policy), dt, cfl_number, dt_max, diagnostic_stride,
                  static_cast<unsigned long long>(seed), static_cast<int>(init.kind),
                  init.k_lo, init.k_hi, init.beta.value_or(-1.0),
                  static_cast<int>(init.target), init.norm_target, init.amplitude);
    std::uint64_t h = 1469598103934665603ULL;
    for (const char* p = buf; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

SpectralField nonlinear_term_impl(const SpectralField& theta, double* u_max) {
    const VelocityField u = geostrophic_velocity(theta);
    const PhysicalField pu1 = to_physical(u.u1);
    const PhysicalField pu2 = to_physical(u.u2);
    const PhysicalField gx = to_physical(gradient_component(theta, 1));
    const PhysicalField gy = to_physical(gradient_component(theta, 2));

    PhysicalField w(theta.grid);
    double m = 0.0;
    for (std::size_t i = 0; i < w.v.size(); ++i) {
        w.v[i] = pu1.v[i] * gx.v[i] + pu2.v[i] * gy.v[i];
        m = std::max(m, std::max(std::abs(pu1.v[i]), std::abs(pu2.v[i])));
    }
    if (u_max) *u_max = m;

    SpectralField n = to_spectral(w);
    dealias(n);
    n.set_mean(Complex(0.0, 0.0));
    if (!n.all_finite())
        throw BlowupError("nonlinear term produced a non-finite value", -1.0);
    return n;
}

struct ExpTables {
    std::vector<double> half;  // exp(-kappa |xi|^{2 alpha} dt / 2)
    std::vector<double> full;  // the square of half
};

struct ExpKey {
    int n;
    double alpha, kappa, dt;
    bool operator<(const ExpKey& o) const {
        if (n != o.n) return n < o.n;
        if (alpha != o.alpha) return alpha < o.alpha;
        if (kappa != o.kappa) return kappa < o.kappa;
        return dt < o.dt;
    }
};

std::shared_ptr<const ExpTables> exp_tables(const GridSpec& grid, double alpha,
                                            double kappa, double dt) {
    static std::map<ExpKey, std::shared_ptr<const ExpTables>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 64) cache.clear();
    auto& slot = cache[ExpKey{grid.n, alpha, kappa, dt}];
    if (!slot) {
        auto t = std::make_shared<ExpTables>();
        t->half.resize(grid.num_modes());
        t->full.resize(grid.num_modes());
        for (int i2 = 0; i2 < grid.n; ++i2) {
            for (int i1 = 0; i1 < grid.n; ++i1) {
                const double x1 = grid.freq(i1), x2 = grid.freq(i2);
                const double r2 = x1 * x1 + x2 * x2;
                const double sym = r2 > 0.0 ? std::pow(r2, alpha) : 0.0;
                const std::size_t j = grid.flat(i1, i2);
                t->half[j] = std::exp(-0.5 * kappa * sym * dt);
                t->full[j] = t->half[j] * t->half[j];
            }
        }
        slot = std::move(t);
    }
    return slot;
}

// One integrating-factor RK4 update; stage1 is the nonlinear term at the
// current state, supplied by the caller so it can double as a diagnostic.
void ifrk4_update(SpectralField& theta, double dt, const SimConfig& cfg,
                  const SpectralField& stage1) {
    const auto tab = exp_tables(theta.grid, cfg.alpha, cfg.kappa, dt);
    const std::size_t n = theta.c.size();
    const auto& E = tab->half;
    const auto& E2 = tab->full;

    SpectralField tmp(theta.grid);
    for (std::size_t i = 0; i < n; ++i)
        tmp.c[i] = E[i] * (theta.c[i] - 0.5 * dt * stage1.c[i]);
    const SpectralField n2 = nonlinear_term_impl(tmp, nullptr);

    for (std::size_t i = 0; i < n; ++i)
        tmp.c[i] = E[i] * theta.c[i] - 0.5 * dt * n2.c[i];
    const SpectralField n3 = nonlinear_term_impl(tmp, nullptr);

    for (std::size_t i = 0; i < n; ++i)
        tmp.c[i] = E2[i] * theta.c[i] - dt * E[i] * n3.c[i];
    const SpectralField n4 = nonlinear_term_impl(tmp, nullptr);

    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        theta.c[i] = E2[i] * theta.c[i] -
                     w * (E2[i] * stage1.c[i] + 2.0 * E[i] * n2.c[i] +
                          2.0 * E[i] * n3.c[i] + n4.c[i]);
}

double spectral_weighted_sq(const SpectralField& f, double power) {
    double sum = 0.0;
    const GridSpec& g = f.grid;
    for (int i2 = 0; i2 < g.n; ++i2) {
        for (int i1 = 0; i1 < g.n; ++i1) {
            const double x1 = g.freq(i1), x2 = g.freq(i2);
            const double r2 = x1 * x1 + x2 * x2;
            if (r2 == 0.0) continue;
            sum += std::pow(r2, power) * std::norm(f.c[g.flat(i1, i2)]);
        }
    }
    return kParseval * sum;
}

// d/dt of ||Lambda^alpha theta||_2^2 given the advective term at theta.
double dissipation_density_rate(const SpectralField& theta, const SpectralField& nl,
                                double alpha, double kappa) {
    double visc = 0.0, adv = 0.0;
    const GridSpec& g = theta.grid;
    for (int i2 = 0; i2 < g.n; ++i2) {
        for (int i1 = 0; i1 < g.n; ++i1) {
            const double x1 = g.freq(i1), x2 = g.freq(i2);
            const double r2 = x1 * x1 + x2 * x2;
            if (r2 == 0.0) continue;
            const std::size_t j = g.flat(i1, i2);
            visc += std::pow(r2, 2.0 * alpha) * std::norm(theta.c[j]);
            adv += std::pow(r2, alpha) *
                   (theta.c[j] * std::conj(nl.c[j])).real();
        }
    }
    return -2.0 * kParseval * (kappa * visc + adv);
}

}  // namespace

SpectralField nonlinear_term(const SpectralField& theta) {
    return nonlinear_term_impl(theta, nullptr);
}

double cfl_dt(const SimConfig& cfg, double u_max) {
    const double advective =
        cfg.cfl_number * cfg.grid.dx() / std::max(u_max, 1e-12);
    return std::min(advective, cfg.dt_max);
}

void step(SpectralField& theta, double dt, const SimConfig& cfg) {
    if (theta.grid != cfg.grid) throw ConfigError("state grid does not match config");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    double u_max = 0.0;
    const SpectralField n1 = nonlinear_term_impl(theta, &u_max);
    if (cfg.policy == StepPolicy::cfl) {
        const double admissible = cfl_dt(cfg, u_max);
        if (dt > admissible * (1.0 + 1e-12))
            throw CflError("requested step exceeds the advective CFL bound", admissible);
    }
    ifrk4_update(theta, dt, cfg, n1);
    if (!theta.all_finite())
        throw BlowupError("state became non-finite during a step", -1.0);
}

RunResult run_from(const SimConfig& cfg, SpectralField theta, const RecordOptions& rec) {
    cfg.validate();
    if (theta.grid != cfg.grid) throw ConfigError("initial state grid does not match config");
    dealias(theta);
    theta.symmetrize();

    const DyadicFilterBank bank = build_filter_bank(cfg.grid);
    const double s0 = 2.0 - 2.0 * cfg.alpha;
    const double p_crit = cfg.alpha > 0.5 ? 2.0 / (2.0 * cfg.alpha - 1.0) : 0.0;

    RunResult out;
    out.series.alpha = cfg.alpha;
    out.series.kappa = cfg.kappa;
    out.series.p_critical = p_crit;
    out.series.bank_kmax = bank.k_max();
    if (rec.shells) {
        out.shell_series.emplace();
        out.shell_series->q = rec.shells->q;
        out.shell_series->s0 = rec.shells->s0;
        out.shell_series->kmax_tested = std::min(rec.shells->kmax, bank.k_max());
    }

    double t = 0.0;
    double running_sup = 0.0;
    double diss_integral = 0.0;
    double prev_g = 0.0, prev_gdot = 0.0, prev_dt = 0.0;
    bool have_prev = false;

    auto sample = [&](const SpectralField& th) {
        NormSample s;
        s.t = t;
        s.l2 = l2_norm(th);
        const PhysicalField phys = to_physical(th);
        s.lp_crit = p_crit > 0.0 ? lp_norm(phys, p_crit) : 0.0;
        s.l4 = lp_norm(phys, 4.0);
        s.h_alpha = std::sqrt(spectral_weighted_sq(th, cfg.alpha));
        s.shells.resize(bank.num_shells());
        double b = 0.0;
        for (int k = bank.k_min(); k <= bank.k_max(); ++k) {
            const double v = std::pow(2.0, k * s0) * shell_l2(bank, th, k);
            s.shells[k] = v;
            b = std::max(b, v);
        }
        s.besov_s0 = b;
        running_sup = std::max(running_sup, b);
        s.besov_running = running_sup;
        s.dissipation_integral = diss_integral;
        out.series.append(std::move(s));
    };

    auto shell_sample = [&](const SpectralField& th) {
        if (!out.shell_series) return;
        ShellSample s;
        s.t = t;
        const int km = out.shell_series->kmax_tested;
        s.energy.resize(km + 1);
        s.lq.resize(km + 1);
        for (int k = 0; k <= km; ++k) {
            const SpectralField pk = project_shell(bank, th, k);
            s.energy[k] = l2_norm(pk);
            s.lq[k] = lp_norm(to_physical(pk), out.shell_series->q);
        }
        double sup = 0.0;
        for (int l = bank.k_min(); l <= bank.k_max(); ++l)
            sup = std::max(sup, shell_sobolev_l2(bank, th, l, out.shell_series->s0));
        s.sup_lambda_s0 = sup;
        out.shell_series->append(std::move(s));
    };

    sample(theta);
    shell_sample(theta);

    const double t_tiny = 1e-12 * cfg.t_end;
    long long step_index = 0;
    while (t < cfg.t_end - t_tiny) {
        double u_max = 0.0;
        const SpectralField n1 = nonlinear_term_impl(theta, &u_max);

        // Close the dissipation-integral increment for the step that ended
        // here, now that the advective term at its endpoint is available.
        const double g = spectral_weighted_sq(theta, cfg.alpha);
        const double gdot = dissipation_density_rate(theta, n1, cfg.alpha, cfg.kappa);
        if (have_prev) {
            const double h = prev_dt;
            diss_integral += 0.5 * h * (prev_g + g) + h * h / 12.0 * (prev_gdot - gdot);
            if (!out.series.rows.empty() && out.series.rows.back().t == t)
                out.series.rows.back().dissipation_integral = diss_integral;
        }

        double dt = cfg.policy == StepPolicy::cfl ? cfl_dt(cfg, u_max) : cfg.dt;
        dt = std::min(dt, cfg.t_end - t);

        const double l2_before = l2_norm(theta);
        ifrk4_update(theta, dt, cfg, n1);
        t += dt;
        ++step_index;

        if (!theta.all_finite())
            throw BlowupError("state became non-finite during a step", t);
        const double l2_after = l2_norm(theta);
        if (l2_after > 10.0 * l2_before && l2_before > 0.0)
            throw BlowupError("norm grew tenfold in a single step", t);

        prev_g = g;
        prev_gdot = gdot;
        prev_dt = dt;
        have_prev = true;

        const bool last = !(t < cfg.t_end - t_tiny);
        if (step_index % cfg.diagnostic_stride == 0 || last) sample(theta);
        shell_sample(theta);
    }

    // Final closing increment for the ledger.
    if (have_prev) {
        const SpectralField n1 = nonlinear_term_impl(theta, nullptr);
        const double g = spectral_weighted_sq(theta, cfg.alpha);
        const double gdot = dissipation_density_rate(theta, n1, cfg.alpha, cfg.kappa);
        const double h = prev_dt;
        diss_integral += 0.5 * h * (prev_g + g) + h * h / 12.0 * (prev_gdot - gdot);
        if (!out.series.rows.empty() && out.series.rows.back().t == t)
            out.series.rows.back().dissipation_integral = diss_integral;
    }

    out.steps = step_index;
    out.final.time = t;
    out.final.config_hash = cfg.param_hash();
    out.final.theta = rec.keep_final ? std::move(theta) : SpectralField(cfg.grid);
    return out;
}

RunResult run(const SimConfig& cfg, const RecordOptions& rec) {
    cfg.validate();
    SpectralField theta0 =
        generate_initial_data(cfg.init, cfg.grid, cfg.alpha, cfg.seed);
    return run_from(cfg, std::move(theta0), rec);
}

}  // namespace sqg
