#pragma once

#include "taucover/space.hpp"

namespace taucover {

/// N-dimensional Minkowski space. Coordinates (t, x_1, ..., x_{N-1}); the
/// ambient metric is the Euclidean distance on coordinates.
class MinkowskiSpace : public Space {
public:
    explicit MinkowskiSpace(std::size_t n);

    std::string name() const override;
    std::size_t dim() const override { return n_; }

    double distance(const SpacePoint& p, const SpacePoint& q) const override;
    bool causal_le(const SpacePoint& p, const SpacePoint& q) const override;
    bool chron_ll(const SpacePoint& p, const SpacePoint& q) const override;
    /// sqrt(dt^2 - |dx|^2) on future causal pairs, else 0.
    double time_separation(const SpacePoint& p, const SpacePoint& q) const override;

private:
    double spatial_dist(const SpacePoint& p, const SpacePoint& q) const;
    std::size_t n_;
};

std::shared_ptr<const MinkowskiSpace> make_minkowski(std::size_t n);

/// tau of the standard Minkowski interval; free-function form used by tests.
double minkowski_tau(const MinkowskiSpace& space, const SpacePoint& p, const SpacePoint& q);

} // namespace taucover
