#include "sqg/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace sqg {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& source, int line, const std::string& key,
                    const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        fail(source, line, "value for '" + key + "' is not a number: '" + v + "'");
    }
    if (used != v.size())
        fail(source, line, "trailing characters after number in '" + key + "'");
    return x;
}

long long parse_int(const std::string& source, int line, const std::string& key,
                    const std::string& v) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        fail(source, line, "value for '" + key + "' is not an integer: '" + v + "'");
    }
    if (used != v.size())
        fail(source, line, "trailing characters after integer in '" + key + "'");
    return x;
}

bool parse_bool(const std::string& source, int line, const std::string& key,
                const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(source, line, "value for '" + key + "' is not a boolean: '" + v + "'");
}

}  // namespace

SimConfig parse_config(const std::string& text, const std::string& source) {
    SimConfig cfg;
    int n = cfg.grid.n;
    double fraction = cfg.grid.dealias_fraction;
    int grid_line = 0;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(source, lineno, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(source, lineno, "empty key");
        if (val.empty()) fail(source, lineno, "empty value for '" + key + "'");

        if (key == "alpha") {
            cfg.alpha = parse_double(source, lineno, key, val);
            if (!(cfg.alpha >= 0.0) || cfg.alpha > 1.0)
                fail(source, lineno, "alpha must lie in [0, 1]");
        }
        else if (key == "kappa") {
            cfg.kappa = parse_double(source, lineno, key, val);
            if (!(cfg.kappa >= 0.0)) fail(source, lineno, "kappa must be nonnegative");
        }
        else if (key == "n") { n = int(parse_int(source, lineno, key, val)); grid_line = lineno; }
        else if (key == "dealias_fraction") { fraction = parse_double(source, lineno, key, val); grid_line = lineno; }
        else if (key == "t_end") {
            cfg.t_end = parse_double(source, lineno, key, val);
            if (!(cfg.t_end > 0.0)) fail(source, lineno, "t_end must be positive");
        }
        else if (key == "dt_policy") {
            if (val == "fixed") cfg.policy = StepPolicy::fixed;
            else if (val == "cfl") cfg.policy = StepPolicy::cfl;
            else fail(source, lineno, "dt_policy must be 'fixed' or 'cfl'");
        }
        else if (key == "dt") {
            cfg.dt = parse_double(source, lineno, key, val);
            if (!(cfg.dt > 0.0)) fail(source, lineno, "dt must be positive");
        }
        else if (key == "cfl_number") {
            cfg.cfl_number = parse_double(source, lineno, key, val);
            if (!(cfg.cfl_number > 0.0)) fail(source, lineno, "cfl_number must be positive");
        }
        else if (key == "dt_max") {
            cfg.dt_max = parse_double(source, lineno, key, val);
            if (!(cfg.dt_max > 0.0)) fail(source, lineno, "dt_max must be positive");
        }
        else if (key == "diagnostic_stride") {
            cfg.diagnostic_stride = int(parse_int(source, lineno, key, val));
            if (cfg.diagnostic_stride < 1) fail(source, lineno, "diagnostic_stride must be at least 1");
        }
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(parse_int(source, lineno, key, val));
        else if (key == "init_kind") {
            if (val == "single_mode") cfg.init.kind = InitKind::single_mode;
            else if (val == "one_dimensional") cfg.init.kind = InitKind::one_dimensional;
            else if (val == "two_mode") cfg.init.kind = InitKind::two_mode;
            else if (val == "random_spectrum") cfg.init.kind = InitKind::random_spectrum;
            else fail(source, lineno, "unknown init_kind '" + val + "'");
        }
        else if (key == "init_k_lo") cfg.init.k_lo = int(parse_int(source, lineno, key, val));
        else if (key == "init_k_hi") cfg.init.k_hi = int(parse_int(source, lineno, key, val));
        else if (key == "init_beta") cfg.init.beta = parse_double(source, lineno, key, val);
        else if (key == "init_norm_kind") {
            if (val == "besov") cfg.init.target = NormTarget::besov_s0;
            else if (val == "lp_crit") cfg.init.target = NormTarget::lp_critical;
            else if (val == "none") cfg.init.target = NormTarget::none;
            else fail(source, lineno, "init_norm_kind must be besov, lp_crit, or none");
        }
        else if (key == "init_norm_target")
            cfg.init.norm_target = parse_double(source, lineno, key, val);
        else if (key == "init_amplitude")
            cfg.init.amplitude = parse_double(source, lineno, key, val);
        else if (key == "allow_out_of_hypothesis")
            cfg.allow_out_of_hypothesis = parse_bool(source, lineno, key, val);
        else
            fail(source, lineno, "unknown key '" + key + "'");
    }

    try {
        cfg.grid = GridSpec(n, fraction);
    } catch (const ConfigError& e) {
        fail(source, grid_line, e.what());
    }
    try {
        cfg.validate(false);
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace sqg
