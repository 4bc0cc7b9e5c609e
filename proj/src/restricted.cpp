#include "taucover/restricted.hpp"

namespace taucover {

RestrictedSpace::RestrictedSpace(SpaceHandle parent, Carrier carrier)
    : parent_(std::move(parent)), carrier_(std::move(carrier)) {
    if (!parent_) throw std::invalid_argument("restrict: null parent");
    if (!carrier_) throw std::invalid_argument("restrict: empty carrier");
}

std::string RestrictedSpace::name() const { return "restricted(" + parent_->name() + ")"; }

bool RestrictedSpace::accepts(std::uint32_t space_id) const {
    return space_id == id() || space_id == parent_->id();
}

void RestrictedSpace::check_carrier(const SpacePoint& p) const {
    check_point(p);
    if (!carrier_(p)) throw std::domain_error(name() + ": point outside carrier");
}

double RestrictedSpace::distance(const SpacePoint& p, const SpacePoint& q) const {
    check_carrier(p);
    check_carrier(q);
    return parent_->distance(p, q);
}

bool RestrictedSpace::causal_le(const SpacePoint& p, const SpacePoint& q) const {
    check_carrier(p);
    check_carrier(q);
    return parent_->causal_le(p, q);
}

bool RestrictedSpace::chron_ll(const SpacePoint& p, const SpacePoint& q) const {
    check_carrier(p);
    check_carrier(q);
    return parent_->chron_ll(p, q);
}

double RestrictedSpace::time_separation(const SpacePoint& p, const SpacePoint& q) const {
    check_carrier(p);
    check_carrier(q);
    return parent_->time_separation(p, q);
}

std::shared_ptr<const RestrictedSpace> restrict_space(SpaceHandle parent,
                                                      RestrictedSpace::Carrier carrier) {
    return std::make_shared<const RestrictedSpace>(std::move(parent), std::move(carrier));
}

} // namespace taucover
