#pragma once

#include <filesystem>

#include "subdrift/bench.hpp"

namespace subdrift {

// Flat "key = value" file: '#' starts a comment, blank lines are skipped,
// list values are comma separated. Unknown keys and malformed values raise
// std::invalid_argument with the offending line number.
ExperimentConfig parse_config_file(const std::filesystem::path& path);

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

}  // namespace subdrift
