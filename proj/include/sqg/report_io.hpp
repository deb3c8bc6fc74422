#pragma once

#include <string>

#include "json.hpp"
#include "sqg/diagnostics.hpp"
#include "sqg/series.hpp"

namespace sqg {

// Fixed column set: t, l2, lp_crit, h_alpha, besov_s0, J, then shell_k for
// every bank shell. Values printed with %.17g so identical runs produce
// byte-identical files.
std::string series_to_csv(const NormSeries& series);

// Richer than the CSV: adds the L4 norm and the dissipation integral.
nlohmann::json series_to_json(const NormSeries& series);

nlohmann::json report_to_json(const InequalityReport& report);

// One row per sample: name, t, k, lhs, rhs, ratio.
std::string report_to_csv(const InequalityReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sqg
