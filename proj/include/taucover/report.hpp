#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "taucover/measures.hpp"

namespace taucover {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "0.1.0";

/// JSON value for a possibly infinite double ("inf" as a string; JSON has no
/// infinity literal).
ordered_json json_number(double v);

struct Verdict {
    std::string check; // names the module invariant instantiated
    bool pass = false;
    std::string detail;
};

struct ReportEnvelope {
    ordered_json config_echo;
    std::string artifact_version = kArtifactVersion;
    ordered_json payload;
    std::vector<Verdict> verdicts;
    double wall_seconds = 0.0;

    bool all_pass() const;
    /// Deterministic given config + seed; wall_seconds is the only
    /// run-varying field.
    ordered_json to_json() const;
};

ordered_json estimate_to_json(const MeasureEstimate& est);

/// Reproducibility serialization of a covering family: vertex coordinates,
/// cached tau and cost per diamond, plus generation metadata.
ordered_json family_to_json(const DiamondFamily& family);
/// Rebuilds the family against a space, recomputing and checking the caches.
DiamondFamily family_from_json(const Space& space, const ordered_json& j);

/// CSV with header row, comma separator, "." decimal, no locale.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string csv_num(double v);

/// Per-delta covering table: mode, N, delta, candidates, chosen, total_cost,
/// feasible.
void write_measure_csv(const std::string& path, const std::vector<const MeasureEstimate*>& series);

/// log-log (delta, value) series per N for external plotting.
void write_loglog_csv(const std::string& path, const std::vector<const MeasureEstimate*>& series);

} // namespace taucover
