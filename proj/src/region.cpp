#include "taucover/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taucover {

namespace {
constexpr double kEdge = 1e-12;
}

Region Region::box(SpaceHandle space, std::vector<double> lo, std::vector<double> hi) {
    if (!space) throw std::invalid_argument("region: null space");
    if (lo.size() != space->dim() || hi.size() != space->dim())
        throw std::invalid_argument("region: box dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (hi[i] < lo[i]) throw std::invalid_argument("region: inverted box");
    Region r;
    r.space_ = std::move(space);
    r.lo_ = std::move(lo);
    r.hi_ = std::move(hi);
    r.member_ = [lo = r.lo_, hi = r.hi_](const SpacePoint& p) {
        if (p.x.size() != lo.size()) return false;
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (p.x[i] < lo[i] - kEdge || p.x[i] > hi[i] + kEdge) return false;
        return true;
    };
    return r;
}

Region Region::cloud(SpaceHandle space, std::vector<SpacePoint> points) {
    if (!space) throw std::invalid_argument("region: null space");
    if (points.empty()) throw std::invalid_argument("region: empty cloud");
    Region r;
    r.space_ = std::move(space);
    const std::size_t d = r.space_->dim();
    r.lo_.assign(d, kInfinity);
    r.hi_.assign(d, -kInfinity);
    for (const auto& p : points) {
        if (p.x.size() != d) throw std::invalid_argument("region: cloud point dimension mismatch");
        for (std::size_t i = 0; i < d; ++i) {
            r.lo_[i] = std::min(r.lo_[i], p.x[i]);
            r.hi_[i] = std::max(r.hi_[i], p.x[i]);
        }
    }
    r.cloud_ = std::make_shared<const std::vector<SpacePoint>>(std::move(points));
    r.member_ = [cloud = r.cloud_](const SpacePoint& p) {
        return std::any_of(cloud->begin(), cloud->end(),
                           [&](const SpacePoint& q) { return q.x == p.x; });
    };
    return r;
}

Region Region::image(SpaceHandle space, Region source, PointMap map, PointMap inverse,
                     std::size_t bbox_probe) {
    if (!space) throw std::invalid_argument("region: null space");
    if (!map || !inverse) throw std::invalid_argument("region: image needs map and inverse");
    Region r;
    r.space_ = std::move(space);
    r.push_ = std::move(map);
    r.source_ = std::make_shared<const Region>(std::move(source));
    const std::size_t d = r.space_->dim();
    r.lo_.assign(d, kInfinity);
    r.hi_.assign(d, -kInfinity);
    auto absorb = [&](const SpacePoint& y) {
        for (std::size_t i = 0; i < d; ++i) {
            r.lo_[i] = std::min(r.lo_[i], y.x[i]);
            r.hi_[i] = std::max(r.hi_[i], y.x[i]);
        }
    };
    // mapped corners of the source box pin affine images exactly; probes
    // cover curvilinear bulges
    const std::size_t sd = r.source_->lo().size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << sd); ++mask) {
        std::vector<double> c(sd);
        for (std::size_t i = 0; i < sd; ++i)
            c[i] = (mask >> i & 1) ? r.source_->hi()[i] : r.source_->lo()[i];
        try {
            absorb(r.push_(SpacePoint{r.source_->space()->id(), std::move(c)}));
        } catch (const std::exception&) {
            // corner outside the map's domain; probes still bound the hull
        }
    }
    for (const auto& s : r.source_->sample(bbox_probe, 0)) absorb(r.push_(s));
    r.member_ = [src = r.source_, inv = std::move(inverse)](const SpacePoint& y) {
        return src->member(inv(y));
    };
    return r;
}

Region Region::with_member(std::function<bool(const SpacePoint&)> member) const {
    Region r = *this;
    r.member_ = std::move(member);
    return r;
}

Region Region::thicken(double eps) const {
    if (eps < 0.0) throw std::invalid_argument("region: negative thickening");
    std::vector<double> lo = lo_, hi = hi_;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] -= eps;
        hi[i] += eps;
    }
    return Region::box(space_, std::move(lo), std::move(hi));
}

double Region::box_measure() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        const double e = hi_[i] - lo_[i];
        if (e > kEdge) v *= e;
    }
    return v;
}

std::vector<SpacePoint> Region::sample(std::size_t n, std::uint64_t seed) const {
    std::vector<SpacePoint> out;
    if (cloud_) {
        out = *cloud_;
        if (out.size() > n) out.resize(n);
        return out;
    }
    if (push_) {
        auto src = source_->sample(n, seed);
        out.reserve(src.size());
        for (const auto& p : src) out.push_back(push_(p));
        return out;
    }
    const std::size_t d = space_->dim();
    Halton seq(d, seed);
    out.reserve(n);
    std::size_t i = 0;
    const std::size_t cap = 64 * std::max<std::size_t>(n, 1);
    while (out.size() < n && i < cap) {
        auto u = seq(i++);
        std::vector<double> coords(d);
        for (std::size_t k = 0; k < d; ++k) coords[k] = lo_[k] + (hi_[k] - lo_[k]) * u[k];
        SpacePoint p{space_->id(), std::move(coords)};
        if (member_(p)) out.push_back(std::move(p));
    }
    return out;
}

} // namespace taucover
