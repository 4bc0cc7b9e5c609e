#include "taucover/warped.hpp"

#include <algorithm>
#include <cmath>

#include "taucover/quadrature.hpp"

namespace taucover {

WarpedProductSpace::WarpedProductSpace(double lo, double hi, WarpFunction warp, BaseHandle base,
                                       double solver_tol)
    : lo_(lo), hi_(hi), warp_(std::move(warp)), base_(std::move(base)), tol_(solver_tol) {
    if (!(lo < hi)) throw std::invalid_argument("warped product: empty interval");
    if (!base_) throw std::invalid_argument("warped product: null base");
}

std::string WarpedProductSpace::name() const {
    return "warped(" + warp_.form() + "," + base_->name() + ")";
}

void WarpedProductSpace::check_time(double t) const {
    if (t < lo_ || t > hi_)
        throw std::invalid_argument(name() + ": time coordinate leaves the interval");
}

BasePoint WarpedProductSpace::base_part(const SpacePoint& p) const {
    return BasePoint(p.x.begin() + 1, p.x.end());
}

SpacePoint WarpedProductSpace::assemble(double t, const BasePoint& b) const {
    std::vector<double> coords;
    coords.reserve(1 + b.size());
    coords.push_back(t);
    coords.insert(coords.end(), b.begin(), b.end());
    return point(std::move(coords));
}

double WarpedProductSpace::distance(const SpacePoint& p, const SpacePoint& q) const {
    check_point(p);
    check_point(q);
    const double dt = q.x[0] - p.x[0];
    const double db = base_->distance(base_part(p), base_part(q));
    return std::sqrt(dt * dt + db * db);
}

double WarpedProductSpace::speed_budget(double s, double t) const {
    if (t < s) throw std::invalid_argument("speed_budget: needs s <= t");
    check_time(s);
    check_time(t);
    return integrate([this](double u) { return 1.0 / warp_(u); }, s, t, 1e-12);
}

bool WarpedProductSpace::causal_le(const SpacePoint& p, const SpacePoint& q) const {
    check_point(p);
    check_point(q);
    const double s = p.x[0], t = q.x[0];
    if (t < s) return false;
    return base_->distance(base_part(p), base_part(q)) <= speed_budget(s, t);
}

bool WarpedProductSpace::chron_ll(const SpacePoint& p, const SpacePoint& q) const {
    check_point(p);
    check_point(q);
    const double s = p.x[0], t = q.x[0];
    if (t <= s) return false;
    return base_->distance(base_part(p), base_part(q)) < speed_budget(s, t);
}

// Maximize L = int_s^t sqrt(1 - f^2 w^2) du over speed profiles w >= 0 with
// int w = d. Stationarity gives w(u) = mu / (f sqrt(f^2 + mu^2)) and
// L(mu) = int f / sqrt(f^2 + mu^2); the multiplier is found by bisection on
// the monotone constraint integral g(mu) = int w(u;mu) du = d.
double WarpedProductSpace::tau_solver(double s, double t, double d) const {
    if (d <= 0.0) return t - s;
    const double qtol = std::min(tol_ * 1e-2, 1e-12);
    auto g = [&](double mu) {
        return integrate(
            [&](double u) {
                const double f = warp_(u);
                return mu / (f * std::sqrt(f * f + mu * mu));
            },
            s, t, qtol);
    };
    double hilo = 0.0, hi = 1.0;
    while (g(hi) < d && hi < 1e18) {
        hilo = hi;
        hi *= 2.0;
    }
    double lo = hilo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < d)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
    }
    const double mu = 0.5 * (lo + hi);
    return integrate(
        [&](double u) {
            const double f = warp_(u);
            return f / std::sqrt(f * f + mu * mu);
        },
        s, t, qtol);
}

double WarpedProductSpace::time_separation(const SpacePoint& p, const SpacePoint& q) const {
    // Gate by the chronological relation first so tau > 0 iff p << q exactly.
    if (!chron_ll(p, q)) return 0.0;
    const double s = p.x[0], t = q.x[0];
    const double d = base_->distance(base_part(p), base_part(q));
    if (warp_.form() == "constant") {
        const double c = warp_(s);
        return std::sqrt((t - s) * (t - s) - c * c * d * d); // closed form
    }
    if (!base_->supports_interpolation() && d > 0.0) {
        // Non-geodesic base: fall back to the DP oracle at a default grid.
        // Near-null pairs may come out 0 at this resolution.
        const std::size_t K = 200;
        const double fmax = warp_.max_on(s, t);
        const auto M = static_cast<std::size_t>(std::ceil(3.0 * d * K * fmax / (t - s))) + 2;
        return warped_tau_dp_oracle(*this, p, q, K, M);
    }
    return tau_solver(s, t, d);
}

std::shared_ptr<const WarpedProductSpace> make_warped_product(double lo, double hi,
                                                              WarpFunction warp, BaseHandle base) {
    return std::make_shared<const WarpedProductSpace>(lo, hi, std::move(warp), std::move(base));
}

// ---------------------------------------------------------------------------
// DP oracle

double warped_tau_dp_oracle(const WarpedProductSpace& space, const SpacePoint& x,
                            const SpacePoint& y, std::size_t K, std::size_t M) {
    if (K < 2 || M < 2) throw std::invalid_argument("dp oracle: grids need >= 2 steps");
    if (!space.causal_le(x, y)) return 0.0;
    const double s = x.x[0], t = y.x[0];
    const double d = space.base().distance(space.base_part(x), space.base_part(y));
    if (t <= s) return 0.0;
    const double dt = (t - s) / static_cast<double>(K);
    if (d <= 0.0) return t - s;
    const double dd = d / static_cast<double>(M);
    const auto& f = space.warp();

    constexpr double kNeg = -1e300;
    std::vector<double> value(M + 1, kNeg), next(M + 1);
    value[0] = 0.0;
    std::vector<double> leg;
    for (std::size_t i = 0; i < K; ++i) {
        const double u0 = s + dt * static_cast<double>(i);
        const double fm = f.max_on(u0, u0 + dt);
        auto kmax = static_cast<std::size_t>(std::floor(dt / (fm * dd)));
        kmax = std::min(kmax, M);
        leg.assign(kmax + 1, 0.0);
        for (std::size_t k = 0; k <= kmax; ++k) {
            const double step = fm * dd * static_cast<double>(k);
            leg[k] = std::sqrt(std::max(dt * dt - step * step, 0.0));
        }
        for (std::size_t j = 0; j <= M; ++j) next[j] = value[j] + leg[0];
        for (std::size_t k = 1; k <= kmax; ++k) {
            const double lk = leg[k];
            for (std::size_t j = k; j <= M; ++j)
                next[j] = std::max(next[j], value[j - k] + lk);
        }
        value.swap(next);
    }
    return std::max(value[M], 0.0);
}

double warped_tau_dp_extrapolated(const WarpedProductSpace& space, const SpacePoint& x,
                                  const SpacePoint& y, std::size_t K) {
    // Two smooth error terms: the per-step warp overestimate decays like 1/K
    // at fixed grid ratio q = M/K, and the speed-staircase deficit like 1/q^2
    // at fixed K. Extrapolate both.
    auto limit_in_k = [&](std::size_t q) {
        const double v1 = warped_tau_dp_oracle(space, x, y, K, q * K);
        const double v2 = warped_tau_dp_oracle(space, x, y, 2 * K, q * 2 * K);
        return 2.0 * v2 - v1;
    };
    const double l24 = limit_in_k(24);
    const double l36 = limit_in_k(36);
    const double r2 = (36.0 / 24.0) * (36.0 / 24.0);
    return l36 + (l36 - l24) / (r2 - 1.0);
}

} // namespace taucover
