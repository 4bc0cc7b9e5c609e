#pragma once

#include <string>

#include <json.hpp>

namespace taucover {

/// Raised for schema violations; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One experiment: space spec, task, task parameters, output paths. The
/// schema is strict: unknown keys are rejected, the seed is mandatory.
struct ExperimentConfig {
    nlohmann::ordered_json raw; // validated document (config echo)
    std::string task;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::string prefix = "experiment";

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_json(const nlohmann::ordered_json& doc);
};

} // namespace taucover
