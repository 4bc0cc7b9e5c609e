#include "taucover/minkowski.hpp"

#include <cmath>

namespace taucover {

MinkowskiSpace::MinkowskiSpace(std::size_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("MinkowskiSpace: dimension must be >= 2");
}

std::string MinkowskiSpace::name() const { return "minkowski(" + std::to_string(n_) + ")"; }

double MinkowskiSpace::spatial_dist(const SpacePoint& p, const SpacePoint& q) const {
    double s = 0.0;
    for (std::size_t i = 1; i < n_; ++i) {
        const double d = q.x[i] - p.x[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double MinkowskiSpace::distance(const SpacePoint& p, const SpacePoint& q) const {
    check_point(p);
    check_point(q);
    const double dt = q.x[0] - p.x[0];
    const double dx = spatial_dist(p, q);
    return std::sqrt(dt * dt + dx * dx);
}

bool MinkowskiSpace::causal_le(const SpacePoint& p, const SpacePoint& q) const {
    check_point(p);
    check_point(q);
    const double dt = q.x[0] - p.x[0];
    return dt >= 0.0 && spatial_dist(p, q) <= dt;
}

bool MinkowskiSpace::chron_ll(const SpacePoint& p, const SpacePoint& q) const {
    check_point(p);
    check_point(q);
    const double dt = q.x[0] - p.x[0];
    return dt > 0.0 && spatial_dist(p, q) < dt;
}

double MinkowskiSpace::time_separation(const SpacePoint& p, const SpacePoint& q) const {
    check_point(p);
    check_point(q);
    const double dt = q.x[0] - p.x[0];
    if (dt <= 0.0) return 0.0;
    const double dx = spatial_dist(p, q);
    if (dx >= dt) return 0.0;
    return std::sqrt(dt * dt - dx * dx);
}

std::shared_ptr<const MinkowskiSpace> make_minkowski(std::size_t n) {
    return std::make_shared<const MinkowskiSpace>(n);
}

double minkowski_tau(const MinkowskiSpace& space, const SpacePoint& p, const SpacePoint& q) {
    return space.time_separation(p, q);
}

} // namespace taucover
