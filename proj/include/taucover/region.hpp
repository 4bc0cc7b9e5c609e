#pragma once

#include <functional>
#include <memory>

#include "taucover/rng.hpp"
#include "taucover/space.hpp"

namespace taucover {

/// A bounded subset of a space: a coordinate box, an explicit point cloud,
/// or the image of another region under an invertible point map. Carries a
/// membership test and a deterministic low-discrepancy sampler. A bounding
/// box is always available (lattice generation needs it); degenerate
/// (zero-extent) axes are allowed and describe lower-dimensional sets.
class Region {
public:
    using PointMap = std::function<SpacePoint(const SpacePoint&)>;

    static Region box(SpaceHandle space, std::vector<double> lo, std::vector<double> hi);
    static Region cloud(SpaceHandle space, std::vector<SpacePoint> points);
    /// Image of `source` under `map` into `space`; membership is pulled back
    /// through `inverse`. The bounding box is the hull of mapped probes.
    static Region image(SpaceHandle space, Region source, PointMap map, PointMap inverse,
                        std::size_t bbox_probe = 4096);
    /// Same box/cloud geometry, custom membership predicate.
    Region with_member(std::function<bool(const SpacePoint&)> member) const;

    /// eps-thickening as a derived region: the coordinate box expanded by eps
    /// per axis with plain box membership. For box regions this is the
    /// l-infinity thickening; in general it is a superset of the metric one,
    /// which is the conservative direction for hypothesis audits.
    Region thicken(double eps) const;

    const SpaceHandle& space() const { return space_; }
    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }

    bool member(const SpacePoint& p) const { return member_(p); }

    /// n low-discrepancy box samples (Halton, seeded rotation) filtered by
    /// membership; clouds return their points (truncated to n); image
    /// regions push forward the source's samples.
    std::vector<SpacePoint> sample(std::size_t n, std::uint64_t seed) const;

    /// Product of the non-degenerate box extents (sampling density proxy).
    double box_measure() const;
    bool is_cloud() const { return static_cast<bool>(cloud_); }

private:
    Region() = default;
    SpaceHandle space_;
    std::vector<double> lo_, hi_;
    std::function<bool(const SpacePoint&)> member_;
    std::shared_ptr<const std::vector<SpacePoint>> cloud_;
    PointMap push_;
    std::shared_ptr<const Region> source_;
};

} // namespace taucover
