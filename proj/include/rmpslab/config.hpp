#pragma once
// Config files for the CLI: flat key=value text or a JSON object, same keys as
// the command-line flags. Flags always win over file values.

#include <stdexcept>
#include <string>

#include "rmpslab/experiments.hpp"

namespace rmpslab {

// Bad flags / malformed config / missing required fields. CLI maps it to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts `key = value` lines ('#' comments) or a JSON object; keys: kind, d,
// n, D, k, l, samples, seed, epsilon, observable, observable_file, boundary,
// output_dir. Unknown keys and missing required fields throw UsageError
// naming the key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// JSON form; parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const ExperimentConfig& cfg);

bool config_equal(const ExperimentConfig& a, const ExperimentConfig& b);

}  // namespace rmpslab
