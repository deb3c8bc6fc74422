// Command-line front end: run simulations, inspect snapshots, print the
// exponent table, sweep over alpha, and execute the self-verification
// battery. Exit codes: 0 success, 1 verification failure, 2 usage or
// configuration error, 3 numerical blow-up.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <semaphore>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqg/config.hpp"
#include "sqg/errors.hpp"
#include "sqg/evolution.hpp"
#include "sqg/exponents.hpp"
#include "sqg/filter_bank.hpp"
#include "sqg/operators.hpp"
#include "sqg/report_io.hpp"
#include "sqg/snapshot_io.hpp"
#include "sqg/transform.hpp"
#include "sqg/verify.hpp"

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof(b), "%g", v);
    return b;
}

struct CommonFlags {
    std::string config_path;
    std::optional<double> alpha;
    std::optional<double> kappa;
    std::optional<int> n;
    std::optional<double> t_end;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::vector<std::string> formats;

    bool wants(const std::string& fmt) const {
        if (formats.empty()) return fmt == "csv";
        for (const std::string& f : formats)
            if (f == fmt) return true;
        return false;
    }
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, const std::string& default_out,
                      bool with_alpha = true) {
    cmd->add_option("--config", flags.config_path, "config file (flat key = value)");
    if (with_alpha) cmd->add_option("--alpha", flags.alpha, "dissipation exponent override");
    cmd->add_option("--kappa", flags.kappa, "dissipation strength override");
    cmd->add_option("--n", flags.n, "grid size override (power of two, >= 16)");
    cmd->add_option("--t-end", flags.t_end, "final time override");
    cmd->add_option("--seed", flags.seed, "random seed override");
    cmd->add_option("--out", flags.out_dir, "output directory")->default_val(default_out);
    cmd->add_option("--format", flags.formats, "report format, repeatable")
        ->check(CLI::IsMember({"csv", "json"}));
}

sqg::SimConfig build_config(const CommonFlags& flags) {
    sqg::SimConfig cfg;
    if (!flags.config_path.empty()) cfg = sqg::parse_config_file(flags.config_path);
    if (flags.alpha) cfg.alpha = *flags.alpha;
    if (flags.kappa) cfg.kappa = *flags.kappa;
    if (flags.n) cfg.grid = sqg::GridSpec(*flags.n, cfg.grid.dealias_fraction);
    if (flags.t_end) cfg.t_end = *flags.t_end;
    if (flags.seed) cfg.seed = *flags.seed;
    cfg.validate();
    return cfg;
}

const char* init_kind_name(sqg::InitKind k) {
    switch (k) {
        case sqg::InitKind::single_mode: return "single_mode";
        case sqg::InitKind::one_dimensional: return "one_dimensional";
        case sqg::InitKind::two_mode: return "two_mode";
        case sqg::InitKind::random_spectrum: return "random_spectrum";
    }
    return "unknown";
}

nlohmann::json manifest_json(const sqg::SimConfig& cfg, const std::string& command,
                             const CommonFlags& flags) {
    nlohmann::json j;
    j["command"] = command;
    j["alpha"] = cfg.alpha;
    j["kappa"] = cfg.kappa;
    j["n"] = cfg.grid.n;
    j["dealias_fraction"] = cfg.grid.dealias_fraction;
    j["t_end"] = cfg.t_end;
    j["dt_policy"] = cfg.policy == sqg::StepPolicy::cfl ? "cfl" : "fixed";
    j["dt"] = cfg.dt;
    j["cfl_number"] = cfg.cfl_number;
    j["dt_max"] = cfg.dt_max;
    j["diagnostic_stride"] = cfg.diagnostic_stride;
    j["seed"] = cfg.seed;
    j["init_kind"] = init_kind_name(cfg.init.kind);
    j["init_k_lo"] = cfg.init.k_lo;
    j["init_k_hi"] = cfg.init.k_hi;
    j["allow_out_of_hypothesis"] = cfg.allow_out_of_hypothesis;
    j["param_hash"] = cfg.param_hash();
    std::vector<std::string> fmts = flags.formats;
    if (fmts.empty()) fmts.push_back("csv");
    j["formats"] = fmts;
    return j;
}

void write_run_outputs(const sqg::SimConfig& cfg, const sqg::RunResult& result,
                       const CommonFlags& flags, const std::string& out_dir,
                       const std::string& command) {
    fs::create_directories(out_dir);
    if (flags.wants("csv"))
        sqg::write_text_file(out_dir + "/series.csv", sqg::series_to_csv(result.series));
    if (flags.wants("json"))
        sqg::write_text_file(out_dir + "/series.json",
                             sqg::series_to_json(result.series).dump(2) + "\n");
    sqg::save_snapshot(out_dir + "/snapshot_final.sqgs", result.final.theta,
                       result.final.time, cfg.alpha, cfg.kappa);
    sqg::write_text_file(out_dir + "/manifest.json",
                         manifest_json(cfg, command, flags).dump(2) + "\n");
}

int do_run(const CommonFlags& flags) {
    const sqg::SimConfig cfg = build_config(flags);
    const sqg::RunResult result = sqg::run(cfg);
    write_run_outputs(cfg, result, flags, flags.out_dir, "run");
    const sqg::NormSample& last = result.series.rows.back();
    std::cout << "run complete: t = " << num(last.t) << ", steps = " << result.steps
              << ", l2 = " << num(last.l2) << ", besov_s0 = " << num(last.besov_s0)
              << ", outputs in " << flags.out_dir << "\n";
    return 0;
}

int do_analyze(const std::string& snapshot_path, const CommonFlags& flags) {
    const sqg::LoadedSnapshot snap = sqg::load_snapshot(snapshot_path);
    const sqg::DyadicFilterBank bank = sqg::build_filter_bank(snap.theta.grid);
    const double s0 = 2.0 - 2.0 * snap.alpha;

    nlohmann::json j;
    j["path"] = snapshot_path;
    j["n"] = snap.theta.grid.n;
    j["time"] = snap.time;
    j["alpha"] = snap.alpha;
    j["kappa"] = snap.kappa;
    j["l2"] = sqg::l2_norm(snap.theta);
    j["besov_s0"] = sqg::besov_norm_2inf(bank, snap.theta, s0);
    j["h_alpha"] = sqg::sobolev_norm(bank, snap.theta, snap.alpha,
                                     sqg::Sobolev::homogeneous);
    const sqg::PhysicalField phys = sqg::to_physical(snap.theta);
    j["linf"] = phys.max_abs();
    if (snap.alpha > 0.5)
        j["lp_crit"] = sqg::lp_norm(phys, 2.0 / (2.0 * snap.alpha - 1.0));

    if (flags.wants("json")) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& [key, value] : j.items())
            std::cout << key << " = "
                      << (value.is_string() ? value.get<std::string>() : value.dump())
                      << "\n";
    }
    return 0;
}

int do_verify(const CommonFlags& flags) {
    sqg::VerifyOptions opts;
    if (flags.n) opts.n_main = *flags.n;
    if (flags.t_end) opts.t_end_main = *flags.t_end;
    if (flags.seed) opts.seed = *flags.seed;
    const sqg::VerificationSummary summary = sqg::run_verification(opts, std::cout);

    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        nlohmann::json j;
        j["all_pass"] = summary.all_pass;
        j["n_main"] = opts.n_main;
        j["t_end_main"] = opts.t_end_main;
        j["seed"] = opts.seed;
        nlohmann::json arr = nlohmann::json::array();
        for (const sqg::CriterionResult& r : summary.results)
            arr.push_back({{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"detail", r.detail}});
        j["criteria"] = arr;
        sqg::write_text_file(flags.out_dir + "/verify.json", j.dump(2) + "\n");
    }
    return summary.all_pass ? 0 : 1;
}

int do_exponents(std::vector<double> alphas) {
    if (alphas.empty()) alphas = {0.6, 0.75};
    for (double a : alphas) {
        const sqg::ExponentSet ex = sqg::compute_exponents(a);
        std::cout << "alpha=" << num(a) << " regime=" << sqg::regime_name(ex.regime)
                  << " s0=" << num(ex.s0);
        if (ex.p_critical) std::cout << " p_crit=" << num(*ex.p_critical);
        if (ex.holder_p) std::cout << " p=" << num(*ex.holder_p);
        if (ex.holder_q) std::cout << " q=" << num(*ex.holder_q);
        if (ex.gn_gamma) std::cout << " gamma=" << num(*ex.gn_gamma);
        if (ex.gn_a) std::cout << " a=" << num(*ex.gn_a);
        if (ex.besov_bound_power) std::cout << " M=" << num(*ex.besov_bound_power);
        std::cout << "\n";
    }
    return 0;
}

int sweep_threads() {
    if (const char* env = std::getenv("SQG_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

int do_sweep(const CommonFlags& flags, std::vector<double> alphas) {
    if (alphas.empty()) alphas = {0.6, 0.75};

    CommonFlags base = flags;
    base.alpha.reset();
    std::vector<sqg::SimConfig> configs;
    for (double a : alphas) {
        sqg::SimConfig cfg = build_config(base);
        cfg.alpha = a;
        cfg.validate();
        configs.push_back(cfg);
    }

    std::counting_semaphore<256> gate(sweep_threads());
    std::vector<std::future<std::string>> results;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        results.push_back(std::async(std::launch::async, [&, i]() {
            gate.acquire();
            std::string line;
            try {
                const sqg::SimConfig& cfg = configs[i];
                const std::string sub = flags.out_dir + "/alpha_" + num(cfg.alpha);
                const sqg::RunResult r = sqg::run(cfg);
                write_run_outputs(cfg, r, flags, sub, "sweep");
                const sqg::NormSample& last = r.series.rows.back();
                line = "alpha " + num(cfg.alpha) + ": t = " + num(last.t) +
                       ", l2 = " + num(last.l2) + ", besov_s0 = " + num(last.besov_s0) +
                       ", outputs in " + sub;
            } catch (...) {
                gate.release();
                throw;
            }
            gate.release();
            return line;
        }));
    }
    for (auto& f : results) std::cout << f.get() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral solver and analysis toolkit for the dissipative "
                 "surface quasi-geostrophic equation on the 2D torus"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* cmd_run = app.add_subcommand("run", "evolve one configuration and write series + snapshot");
    add_common_flags(cmd_run, run_flags, "out");

    CommonFlags analyze_flags;
    std::string snapshot_path;
    CLI::App* cmd_analyze = app.add_subcommand("analyze", "print norms of a stored snapshot");
    cmd_analyze->add_option("snapshot", snapshot_path, "snapshot file")->required();
    cmd_analyze->add_option("--format", analyze_flags.formats, "output format, repeatable")
        ->check(CLI::IsMember({"csv", "json"}));

    CommonFlags verify_flags;
    CLI::App* cmd_verify = app.add_subcommand("verify", "run the full self-verification battery");
    add_common_flags(cmd_verify, verify_flags, "");

    std::vector<double> exponent_alphas;
    CLI::App* cmd_exponents = app.add_subcommand("exponents", "print the derived exponent table");
    cmd_exponents->add_option("--alpha", exponent_alphas, "dissipation exponent, repeatable");

    CommonFlags sweep_flags;
    std::vector<double> sweep_alphas;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run one configuration across an alpha grid");
    add_common_flags(cmd_sweep, sweep_flags, "sweep", false);
    cmd_sweep->add_option("--alpha", sweep_alphas, "alpha grid point, repeatable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cmd_run->parsed()) return do_run(run_flags);
        if (cmd_analyze->parsed()) return do_analyze(snapshot_path, analyze_flags);
        if (cmd_verify->parsed()) return do_verify(verify_flags);
        if (cmd_exponents->parsed()) return do_exponents(exponent_alphas);
        if (cmd_sweep->parsed()) return do_sweep(sweep_flags, sweep_alphas);
    } catch (const sqg::BlowupError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return 3;
    } catch (const sqg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sqg::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
