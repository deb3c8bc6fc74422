#pragma once

#include <string>

#include "sqg/evolution.hpp"

namespace sqg {

// Flat "key = value" text, '#' starts a comment. Unknown keys, unparsable
// values, and out-of-range parameters raise ConfigError naming the key and
// line. Hypothesis gating (the allow_out_of_hypothesis flag) is enforced when
// a run starts, not here, so diagnostic configs can be inspected freely.
SimConfig parse_config(const std::string& text, const std::string& source = "<config>");

SimConfig parse_config_file(const std::string& path);

}  // namespace sqg
