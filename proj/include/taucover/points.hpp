#pragma once

#include <cstdint>
#include <vector>

namespace taucover {

/// A point of some concrete space. Coordinates are interpreted by the owning
/// space; where the space has a distinguished time coordinate it comes first.
/// Metric-graph base points use (edge index, edge parameter) encoded as doubles.
struct SpacePoint {
    std::uint32_t space_id = 0;
    std::vector<double> x;

    double t() const { return x[0]; }
};

inline SpacePoint make_point(std::uint32_t space_id, std::vector<double> coords) {
    return SpacePoint{space_id, std::move(coords)};
}

} // namespace taucover
