#pragma once

#include "taucover/base_space.hpp"
#include "taucover/space.hpp"
#include "taucover/warp.hpp"

namespace taucover {

/// Lorentzian warped product I x_f X over a base length space, with the
/// product metric D = sqrt(dt^2 + d_X^2). Points are (t, base coords...).
///
/// Causal reachability from (s,p) to (t,q) holds iff s <= t and
/// d(p,q) <= speed_budget(s,t) = int_s^t du/f(u); the chronological relation
/// is the strict version. This criterion is derived from the causal-curve
/// classification (t-parametrized curves obey v_beta <= 1/f) and is
/// cross-validated against the dynamic-programming oracle in tests.
class WarpedProductSpace : public Space {
public:
    WarpedProductSpace(double interval_lo, double interval_hi, WarpFunction warp, BaseHandle base,
                       double solver_tol = 1e-10);

    std::string name() const override;
    std::size_t dim() const override { return 1 + base_->coord_dim(); }

    double distance(const SpacePoint& p, const SpacePoint& q) const override;
    bool causal_le(const SpacePoint& p, const SpacePoint& q) const override;
    bool chron_ll(const SpacePoint& p, const SpacePoint& q) const override;
    double time_separation(const SpacePoint& p, const SpacePoint& q) const override;

    /// Maximal base distance traversable causally between times s <= t.
    double speed_budget(double s, double t) const;

    const WarpFunction& warp() const { return warp_; }
    const BaseLengthSpace& base() const { return *base_; }
    double interval_lo() const { return lo_; }
    double interval_hi() const { return hi_; }

    BasePoint base_part(const SpacePoint& p) const;
    SpacePoint assemble(double t, const BasePoint& b) const;

private:
    void check_time(double t) const;
    double tau_solver(double s, double t, double d) const;

    double lo_, hi_;
    WarpFunction warp_;
    BaseHandle base_;
    double tol_;
};

std::shared_ptr<const WarpedProductSpace> make_warped_product(double lo, double hi,
                                                              WarpFunction warp, BaseHandle base);

/// Independent lower-bound oracle for the warped time separation: dynamic
/// program over (time step, covered base distance) with per-leg value
/// sqrt(dt^2 - fmax^2 dd^2), fmax the warp maximum on the subinterval. The
/// legs underestimate every causal polygonal curve's length, so the value
/// converges to the supremum from below as the grids refine.
double warped_tau_dp_oracle(const WarpedProductSpace& space, const SpacePoint& x,
                            const SpacePoint& y, std::size_t time_steps,
                            std::size_t dist_steps);

/// Richardson-extrapolated oracle: runs the DP at (K, 24K) and (2K, 48K) and
/// returns 2*v(2K) - v(K); removes the smooth 1/K bias of the raw DP.
double warped_tau_dp_extrapolated(const WarpedProductSpace& space, const SpacePoint& x,
                                  const SpacePoint& y, std::size_t time_steps);

} // namespace taucover
