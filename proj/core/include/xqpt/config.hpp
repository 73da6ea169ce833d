// config.hpp — versioned JSON run configuration for the command-line driver.

#pragma once

#include "xqpt/dimer.hpp"
#include "xqpt/dynamics.hpp"
#include "xqpt/ensemble.hpp"
#include "xqpt/signal.hpp"

#include <stdexcept>
#include <string>

namespace xqpt {

class config_error : public std::runtime_error {
public:
    config_error(const std::string& path, const std::string& message)
        : std::runtime_error(path + ": " + message), field_path_(path) {}

    const std::string& field_path() const noexcept { return field_path_; }

private:
    std::string field_path_;
};

struct RunConfig {
    int version{1};
    DimerParams dimer;
    BathParams bath;
    ExperimentConfig experiment;  // includes the pulse toolbox
    EnsembleSettings ensemble;
    std::string output_dir{"out"};
};

// Parse and schema-validate a config file. Unknown keys are rejected; every
// violation carries the offending field path. JSON syntax errors are
// reported with the parser's byte position.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

// Serialization (used by `validate` round-trip checks and tests).
std::string run_config_to_json(const RunConfig& config);

} // namespace xqpt
