#include "taucover/space.hpp"

#include <atomic>

namespace taucover {

namespace {
std::uint32_t next_space_id() {
    static std::atomic<std::uint32_t> counter{1};
    return counter.fetch_add(1);
}
} // namespace

Space::Space() : id_(next_space_id()) {}

SpacePoint Space::point(std::vector<double> coords) const {
    if (coords.size() != dim())
        throw std::invalid_argument(name() + ": expected " + std::to_string(dim()) +
                                    " coordinates, got " + std::to_string(coords.size()));
    return SpacePoint{id_, std::move(coords)};
}

bool Space::causal_lt(const SpacePoint& p, const SpacePoint& q) const {
    if (!causal_le(p, q)) return false;
    return p.x != q.x;
}

void Space::check_point(const SpacePoint& p) const {
    if (!accepts(p.space_id))
        throw std::invalid_argument(name() + ": point belongs to another space");
    if (p.x.size() != dim())
        throw std::invalid_argument(name() + ": dimension mismatch");
}

} // namespace taucover
