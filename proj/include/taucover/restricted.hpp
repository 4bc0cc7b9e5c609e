#pragma once

#include <functional>

#include "taucover/space.hpp"

namespace taucover {

/// A space restricted to a carrier subset: the distance, both relations and
/// the time separation of the parent, defined only on carrier points.
/// Queries with an argument outside the carrier throw std::domain_error.
class RestrictedSpace : public Space {
public:
    using Carrier = std::function<bool(const SpacePoint&)>;

    RestrictedSpace(SpaceHandle parent, Carrier carrier);

    std::string name() const override;
    std::size_t dim() const override { return parent_->dim(); }

    double distance(const SpacePoint& p, const SpacePoint& q) const override;
    bool causal_le(const SpacePoint& p, const SpacePoint& q) const override;
    bool chron_ll(const SpacePoint& p, const SpacePoint& q) const override;
    double time_separation(const SpacePoint& p, const SpacePoint& q) const override;

    bool in_carrier(const SpacePoint& p) const { return carrier_(p); }
    const SpaceHandle& parent() const { return parent_; }

protected:
    bool accepts(std::uint32_t space_id) const override;

private:
    void check_carrier(const SpacePoint& p) const;
    SpaceHandle parent_;
    Carrier carrier_;
};

std::shared_ptr<const RestrictedSpace> restrict_space(SpaceHandle parent,
                                                      RestrictedSpace::Carrier carrier);

} // namespace taucover
