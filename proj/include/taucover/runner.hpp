#pragma once

#include <optional>

#include "taucover/config.hpp"
#include "taucover/report.hpp"

namespace taucover {

struct RunResult {
    int exit_code = 0; // 0 all PASS, 1 config error, 2 infeasible, 3 verdict FAIL
    ReportEnvelope report;
};

/// Executes the configured task and writes <out_dir>/<prefix>_report.json
/// plus the task's CSV tables. Seed and output dir may be overridden.
RunResult run_experiment(const ExperimentConfig& config,
                         const std::optional<std::string>& out_override = std::nullopt,
                         const std::optional<std::uint64_t>& seed_override = std::nullopt,
                         int threads = 1);

} // namespace taucover
