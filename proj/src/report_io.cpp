#include "sqg/report_io.hpp"

#include <cstdio>
#include <fstream>

namespace sqg {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string series_to_csv(const NormSeries& series) {
    std::string out = "t,l2,lp_crit,h_alpha,besov_s0,J";
    for (int k = 0; k <= series.bank_kmax; ++k)
        out += ",shell_" + std::to_string(k);
    out += "\n";
    for (const NormSample& row : series.rows) {
        out += fmt(row.t) + "," + fmt(row.l2) + "," + fmt(row.lp_crit) + "," +
               fmt(row.h_alpha) + "," + fmt(row.besov_s0) + "," +
               fmt(row.besov_running);
        for (double s : row.shells) out += "," + fmt(s);
        out += "\n";
    }
    return out;
}

nlohmann::json series_to_json(const NormSeries& series) {
    nlohmann::json rows = nlohmann::json::array();
    for (const NormSample& row : series.rows) {
        rows.push_back({{"t", row.t},
                        {"l2", row.l2},
                        {"lp_crit", row.lp_crit},
                        {"l4", row.l4},
                        {"h_alpha", row.h_alpha},
                        {"besov_s0", row.besov_s0},
                        {"J", row.besov_running},
                        {"dissipation_integral", row.dissipation_integral},
                        {"shells", row.shells}});
    }
    return {{"alpha", series.alpha},
            {"kappa", series.kappa},
            {"p_critical", series.p_critical},
            {"bank_kmax", series.bank_kmax},
            {"rows", rows}};
}

nlohmann::json report_to_json(const InequalityReport& report) {
    nlohmann::json samples = nlohmann::json::array();
    for (const InequalitySample& s : report.samples)
        samples.push_back({{"t", s.t},
                           {"k", s.k},
                           {"lhs", s.lhs},
                           {"rhs", s.rhs},
                           {"ratio", s.ratio}});
    return {{"name", report.name},
            {"params", report.params},
            {"samples", samples},
            {"measured_constant", report.measured_constant},
            {"pass", report.pass},
            {"complete", report.complete},
            {"skipped_samples", report.skipped_samples},
            {"notes", report.notes}};
}

std::string report_to_csv(const InequalityReport& report) {
    std::string out = "name,t,k,lhs,rhs,ratio\n";
    for (const InequalitySample& s : report.samples) {
        out += report.name + "," + fmt(s.t) + "," + std::to_string(s.k) + "," +
               fmt(s.lhs) + "," + fmt(s.rhs) + "," + fmt(s.ratio) + "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw IoError("failed writing file: " + path);
}

}  // namespace sqg
