#pragma once

#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "taucover/points.hpp"

namespace taucover {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// The five-tuple oracle (X, d, <=, <<, tau) for one concrete space.
/// Implementations are immutable after construction; all queries are
/// read-only and safe to issue concurrently.
///
/// Contract on every backend:
///   chron_ll(p,q)  implies causal_le(p,q);
///   causal_le is reflexive;
///   time_separation(p,q) > 0  iff  chron_ll(p,q);
///   time_separation(p,q) = 0  whenever not causal_le(p,q).
/// time_separation may return kInfinity; arithmetic downstream saturates.
class Space {
public:
    Space();
    virtual ~Space() = default;

    std::uint32_t id() const { return id_; }
    virtual std::string name() const = 0;
    /// Number of coordinates of a SpacePoint of this space.
    virtual std::size_t dim() const = 0;

    virtual double distance(const SpacePoint& p, const SpacePoint& q) const = 0;
    virtual bool causal_le(const SpacePoint& p, const SpacePoint& q) const = 0;
    virtual bool chron_ll(const SpacePoint& p, const SpacePoint& q) const = 0;
    virtual double time_separation(const SpacePoint& p, const SpacePoint& q) const = 0;

    SpacePoint point(std::vector<double> coords) const;

    /// Strict causal order a < b: a <= b and a != b (coordinate identity).
    bool causal_lt(const SpacePoint& p, const SpacePoint& q) const;

protected:
    /// Throws std::invalid_argument on ownership or dimension mismatch.
    void check_point(const SpacePoint& p) const;
    /// Accept points carrying this id; restrictions widen this to the parent.
    virtual bool accepts(std::uint32_t space_id) const { return space_id == id_; }

private:
    std::uint32_t id_;
};

using SpaceHandle = std::shared_ptr<const Space>;

} // namespace taucover
