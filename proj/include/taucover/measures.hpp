#pragma once

#include "taucover/cover.hpp"
#include "taucover/restricted.hpp"

namespace taucover {

struct EstimateConfig {
    std::size_t sample_budget = 10000;
    std::uint64_t seed = 1;
    LatticeOptions lattice{};
    const MetricOverride* metric = nullptr; // not owned
    bool infeasible_as_infinity = false;
};

struct MeasureLevel {
    double delta = 0.0;
    double value = 0.0; // greedy covering cost; +inf when no covering exists
    std::size_t candidates = 0;
    std::size_t chosen = 0;
    bool feasible = true;
};

struct MeasureEstimate {
    double n_exponent = 0.0;
    CoverMode mode = CoverMode::V;
    std::vector<MeasureLevel> levels; // raw per-delta values, delta decreasing
    std::vector<double> envelope;     // running max toward small delta
    double value = 0.0;               // envelope at the smallest delta
    double slope = 0.0;               // log(value) vs log(delta) least squares
};

/// Per delta: generates the lattice family, builds the instance over a shared
/// ground sample and solves greedily. Every reported per-delta value is an
/// upper bound of the true covering infimum restricted to the ground sample.
/// W-mode additionally solves the V-family at the same delta and keeps the
/// cheaper solution (any diam<delta cover is W-feasible), so W <= V holds per
/// delta on the shared ground set.
MeasureEstimate estimate_measure(const Space& space, const Region& region, double n_exponent,
                                 CoverMode mode, const std::vector<double>& delta_schedule,
                                 const EstimateConfig& cfg);

/// Measure of the carrier inside restrict(parent, carrier): diamonds are
/// drawn from carrier vertex pairs only. Returns +infinity at every delta
/// admitting no covering (e.g. carriers without causal pairs).
MeasureEstimate estimate_restricted(SpaceHandle parent, const Region& carrier, double n_exponent,
                                    CoverMode mode, const std::vector<double>& delta_schedule,
                                    const EstimateConfig& cfg);

enum class SeriesClass { Divergent, Decaying, Flat };

struct ScanEntry {
    double n_exponent = 0.0;
    MeasureEstimate estimate;
    SeriesClass cls = SeriesClass::Flat;
};

struct DimensionScan {
    std::vector<ScanEntry> entries;
    bool resolved = false;
    double dim_estimate = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
};

/// Estimates the measure at each N (shared families and membership bitsets,
/// recosted per N), classifies divergence (slope < -0.1) vs decay
/// (slope > 0.1) with a dead zone in between, and brackets the dimension.
DimensionScan dimension_scan(const Space& space, const Region& region,
                             const std::vector<double>& n_list, CoverMode mode,
                             const std::vector<double>& delta_schedule, const EstimateConfig& cfg);

/// Least-squares slope of log(value) against log(delta) over finite positive
/// entries; NaN when fewer than two usable points.
double loglog_slope(const std::vector<MeasureLevel>& levels);

void validate_schedule(const std::vector<double>& delta_schedule);

} // namespace taucover
