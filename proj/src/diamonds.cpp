#include "taucover/diamonds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace taucover {

double omega(double n) {
    if (n <= 0.0) throw std::invalid_argument("omega: N must be positive");
    return std::pow(std::numbers::pi, 0.5 * (n - 1.0)) /
           (n * std::tgamma(0.5 * (n + 1.0)) * std::pow(2.0, n - 1.0));
}

double rho_cost(double tau, double n) {
    if (tau == kInfinity) return kInfinity;
    if (tau <= 0.0) return 0.0;
    return omega(n) * std::pow(tau, n);
}

CausalDiamond make_diamond(const Space& space, SpacePoint a, SpacePoint b, double n) {
    if (!space.causal_le(a, b))
        throw std::invalid_argument("make_diamond: vertices are not causally related");
    CausalDiamond d;
    d.tau = space.time_separation(a, b);
    d.cost = rho_cost(d.tau, n);
    d.a = std::move(a);
    d.b = std::move(b);
    if (const auto* mink = dynamic_cast<const MinkowskiSpace*>(&space)) {
        d.diam = minkowski_diamond_diameter(*mink, d.a, d.b);
        d.diam_kind = DiamKind::Exact;
    } else if (const auto* warped = dynamic_cast<const WarpedProductSpace*>(&space)) {
        const double dt = d.b.x[0] - d.a.x[0];
        const double m = warped->warp().min_on(d.a.x[0], d.b.x[0]);
        const double db = warped->base().distance(warped->base_part(d.a), warped->base_part(d.b));
        d.diam = std::sqrt((db + 2.0 * dt / m) * (db + 2.0 * dt / m) + dt * dt);
        d.diam_kind = DiamKind::UpperBound;
    } else {
        d.diam = 0.0;
        d.diam_kind = DiamKind::SampledLower;
    }
    return d;
}

double minkowski_diamond_diameter(const MinkowskiSpace& space, const SpacePoint& a,
                                  const SpacePoint& b) {
    if (!space.causal_le(a, b))
        throw std::invalid_argument("diamond_diameter: vertices are not causally related");
    return space.distance(a, b);
}

namespace {

// Sampling box containing J(a,b): time range [a_t, b_t]; spatially within
// dt of either vertex (Minkowski) or within the slice-containment radius
// (warped product); generic spaces use the vertex box inflated by dt.
void diamond_bbox(const Space& space, const CausalDiamond& d, std::vector<double>& lo,
                  std::vector<double>& hi) {
    const std::size_t dim = space.dim();
    lo.assign(dim, 0.0);
    hi.assign(dim, 0.0);
    const double dt = d.b.x[0] - d.a.x[0];
    lo[0] = d.a.x[0];
    hi[0] = d.b.x[0];
    double radius = dt;
    if (const auto* warped = dynamic_cast<const WarpedProductSpace*>(&space))
        radius = dt / warped->warp().min_on(d.a.x[0], d.b.x[0]);
    for (std::size_t i = 1; i < dim; ++i) {
        lo[i] = std::min(d.a.x[i], d.b.x[i]) - radius;
        hi[i] = std::max(d.a.x[i], d.b.x[i]) + radius;
    }
}

} // namespace

double diamond_diameter_sampled(
    const Space& space, const CausalDiamond& d, std::size_t n, std::uint64_t seed,
    const std::function<double(const SpacePoint&, const SpacePoint&)>& metric) {
    if (n < 2) throw std::invalid_argument("diamond_diameter_sampled: need n >= 2");
    std::vector<double> lo, hi;
    diamond_bbox(space, d, lo, hi);
    Halton seq(space.dim(), seed);
    std::vector<SpacePoint> members{d.a, d.b};
    const std::size_t budget = 64 * n;
    for (std::size_t i = 0; i < budget && members.size() < n + 2; ++i) {
        auto u = seq(i);
        std::vector<double> coords(space.dim());
        for (std::size_t k = 0; k < coords.size(); ++k)
            coords[k] = lo[k] + (hi[k] - lo[k]) * u[k];
        SpacePoint p{d.a.space_id, std::move(coords)};
        if (diamond_member(space, d, p)) members.push_back(std::move(p));
    }
    if (members.size() < 2) throw std::runtime_error("diamond_diameter_sampled: no members found");
    auto dist = metric ? metric : [&space](const SpacePoint& p, const SpacePoint& q) {
        return space.distance(p, q);
    };
    double best = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            best = std::max(best, dist(members[i], members[j]));
    return best;
}

SliceContainmentReport warped_slice_containment_check(const WarpedProductSpace& space,
                                                      const SpacePoint& p, const SpacePoint& q,
                                                      std::size_t samples, std::uint64_t seed) {
    if (!space.causal_le(p, q))
        throw std::invalid_argument("slice check: vertices are not causally related");
    SliceContainmentReport rep;
    const double t0 = p.x[0], t1 = q.x[0];
    const auto pbar = space.base_part(p);
    const auto qbar = space.base_part(q);
    CausalDiamond d;
    d.a = p;
    d.b = q;
    std::vector<double> lo, hi;
    diamond_bbox(space, d, lo, hi);
    Halton seq(space.dim(), seed);
    std::size_t tested = 0;
    const std::size_t budget = 64 * std::max<std::size_t>(samples, 1);
    for (std::size_t i = 0; i < budget && tested < samples; ++i) {
        auto u = seq(i);
        std::vector<double> coords(space.dim());
        for (std::size_t k = 0; k < coords.size(); ++k)
            coords[k] = lo[k] + (hi[k] - lo[k]) * u[k];
        SpacePoint r{p.space_id, std::move(coords)};
        if (!diamond_member(space, d, r)) continue;
        ++tested;
        const double t = r.x[0];
        const auto rbar = space.base_part(r);
        bool ok = t >= t0 - 1e-12 && t <= t1 + 1e-12;
        double excess = 0.0;
        if (t > t0) {
            const double lim = (t - t0) / space.warp().min_on(t0, t);
            excess = std::max(excess, space.base().distance(pbar, rbar) - lim);
        }
        if (t < t1) {
            const double lim = (t1 - t) / space.warp().min_on(t, t1);
            excess = std::max(excess, space.base().distance(qbar, rbar) - lim);
        }
        if (!ok || excess > 1e-9) ++rep.violations;
        rep.worst_excess = std::max(rep.worst_excess, excess);
    }
    rep.members_tested = tested;
    return rep;
}

// ---------------------------------------------------------------------------
// Lattice family generation

namespace {

constexpr double kDegenerateExtent = 1e-9;

double euclid_ball_volume(std::size_t n) {
    // unit-ball volumes by the standard recursion
    double v = 1.0; // n = 0
    double prev = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double cur = (k == 1) ? 2.0 : 2.0 * std::numbers::pi / static_cast<double>(k) * prev;
        prev = v;
        v = cur;
    }
    return v;
}

double snap_half(double extent, double h) {
    if (extent <= kDegenerateExtent || h <= 0.0) return h;
    if (h >= 0.5 * extent) return h; // a single tile spans the extent
    const double k = std::ceil(extent / (2.0 * h) - 1e-12);
    return extent / (2.0 * std::max(k, 1.0));
}

struct FamilyContext {
    const Space* space;
    const MinkowskiSpace* mink;
    const WarpedProductSpace* warped;
    const Region* region;
    double delta;
    CoverMode mode;
    double n_exp;
    const LatticeOptions* opts;
    const MetricOverride* ov;
    double fmax_region = 1.0; // warp max over the region time-extent
    double fmin_region = 1.0;
};

// Vertical diamond at (t, x) with half-height h.
CausalDiamond vertical_diamond(const FamilyContext& c, double t, const std::vector<double>& sp,
                               double h) {
    std::vector<double> ca(c.space->dim()), cb(c.space->dim());
    ca[0] = t - h;
    cb[0] = t + h;
    for (std::size_t i = 1; i < ca.size(); ++i) ca[i] = cb[i] = sp[i - 1];
    SpacePoint a{c.space->id(), std::move(ca)};
    SpacePoint b{c.space->id(), std::move(cb)};
    return make_diamond(*c.space, std::move(a), std::move(b), c.n_exp);
}

// Largest admissible half-height under the mode's delta constraint.
double mode_halfheight_limit(const FamilyContext& c) {
    const double lim = c.opts->guard * c.delta;
    if (c.ov) {
        // trial value; emitted diamonds are re-filtered by the actual
        // override metric below
        return (c.mode == CoverMode::V) ? lim / (2.0 * c.ov->diam_factor) : lim / 2.0;
    }
    if (c.mode == CoverMode::W || c.mink) return lim / 2.0;
    // warped V-mode: diam <= 2h*sqrt(1 + 4/m^2)
    const double m = c.fmin_region;
    return lim / (2.0 * std::sqrt(1.0 + 4.0 / (m * m)));
}

bool passes_mode_constraint(const FamilyContext& c, const CausalDiamond& d) {
    const double lim = c.delta;
    if (c.ov) {
        const double vd = c.ov->dist(d.a, d.b);
        return (c.mode == CoverMode::V) ? c.ov->diam_factor * vd < lim : vd < lim;
    }
    if (c.mode == CoverMode::W) return c.space->distance(d.a, d.b) < lim;
    return d.diam < lim; // Exact (Minkowski) or UpperBound (warped)
}

// Expected region samples per tile at scale h, for the refinement cap.
double expected_points(const FamilyContext& c, double h, std::size_t nondeg_spatial,
                       bool t_degenerate) {
    double tile = 0.0;
    if (t_degenerate) {
        const double r = c.mink ? h : h / c.fmax_region;
        tile = euclid_ball_volume(nondeg_spatial) * std::pow(r, double(nondeg_spatial));
    } else if (nondeg_spatial == 0) {
        tile = 2.0 * h;
    } else {
        const double r = c.mink ? h : h / c.fmax_region;
        // cone volume: 2 * V_s * r^s * h / (s+1)
        tile = 2.0 * euclid_ball_volume(nondeg_spatial) * std::pow(r, double(nondeg_spatial)) *
               h / (double(nondeg_spatial) + 1.0);
    }
    const double vol = c.region->box_measure();
    return tile / vol * static_cast<double>(c.opts->ground_hint);
}

} // namespace

DiamondFamily generate_lattice_family(const Space& space, const Region& region, double delta,
                                      CoverMode mode, double n_exponent,
                                      const LatticeOptions& opts,
                                      const MetricOverride* override_metric) {
    if (delta <= 0.0) throw std::invalid_argument("lattice family: delta must be positive");
    FamilyContext c{&space,
                    dynamic_cast<const MinkowskiSpace*>(&space),
                    dynamic_cast<const WarpedProductSpace*>(&space),
                    &region,
                    delta,
                    mode,
                    n_exponent,
                    &opts,
                    override_metric};
    if (!c.mink && !c.warped)
        throw std::invalid_argument("lattice family: unsupported space kind");
    if (c.warped && !dynamic_cast<const EuclideanBase*>(&c.warped->base()))
        throw std::invalid_argument("lattice family: warped lattice needs a Euclidean base");

    const auto& lo = region.lo();
    const auto& hi = region.hi();
    const std::size_t dim = space.dim();
    const double ext_t = hi[0] - lo[0];
    std::vector<std::size_t> sp_axes;
    double snap_extent = 0.0;
    for (std::size_t i = 1; i < dim; ++i) {
        if (hi[i] - lo[i] > kDegenerateExtent) sp_axes.push_back(i);
        snap_extent = std::max(snap_extent, hi[i] - lo[i]);
    }
    const bool t_degenerate = ext_t <= kDegenerateExtent;
    if (t_degenerate && sp_axes.empty())
        throw std::invalid_argument("lattice family: region box is a single point");
    if (sp_axes.empty()) snap_extent = ext_t;

    if (c.warped) {
        const double margin = 0.51 * delta;
        const double t0 = std::max(lo[0] - margin, c.warped->interval_lo());
        const double t1 = std::min(hi[0] + margin, c.warped->interval_hi());
        c.fmax_region = c.warped->warp().max_on(t0, t1);
        c.fmin_region = c.warped->warp().min_on(t0, t1);
    }

    double h0 = mode_halfheight_limit(c);
    h0 = snap_half(snap_extent, h0);
    if (h0 <= 0.0) throw std::invalid_argument("lattice family: delta too small");

    DiamondFamily fam;
    fam.mode = mode;
    fam.delta = delta;
    fam.n_exponent = n_exponent;
    fam.base_halfheight = h0;

    const std::size_t nsp = sp_axes.size();
    // Refine past the requested scale count while the family is empty: an
    // override metric can filter out the coarse scales entirely (quantized
    // vertex distances), and an empty family is worse than a sparse one.
    for (int s = 0; s < opts.scales + 8; ++s) {
        if (s >= opts.scales && !fam.diamonds.empty()) break;
        double h = snap_half(snap_extent, h0 / std::pow(2.0, s));
        if (s > 0 && !fam.diamonds.empty() &&
            expected_points(c, h, nsp, t_degenerate) < opts.kappa)
            break;
        fam.scales = s + 1;

        // spatial offsets along each non-degenerate axis
        const double px = [&] {
            if (nsp == 0) return 1.0;
            if (t_degenerate) {
                const double r = c.mink ? h : h / c.fmax_region;
                return (nsp == 1) ? 2.0 * r : 2.0 * r / std::sqrt(double(nsp));
            }
            if (c.mink) return (dim == 2) ? h : h / std::sqrt(double(nsp));
            return opts.guard * h / (c.fmax_region * std::sqrt(double(nsp)));
        }();

        std::vector<double> t_centers;
        if (t_degenerate) {
            t_centers.push_back(lo[0]);
        } else if (nsp == 0) {
            // timelike segment: edge-aligned disjoint column
            const auto cells = static_cast<long>(std::llround(std::ceil(ext_t / (2.0 * h) - 1e-12)));
            const double cell = ext_t / static_cast<double>(std::max(cells, 1L));
            for (long i = 0; i < std::max(cells, 1L); ++i)
                t_centers.push_back(lo[0] + cell * (0.5 + static_cast<double>(i)));
        } else {
            const double pt = h;
            const auto rows = static_cast<long>(std::ceil(ext_t / pt)) + 1;
            for (long i = -1; i <= rows; ++i)
                t_centers.push_back(lo[0] + pt * static_cast<double>(i));
        }

        // per-axis offset lists
        std::vector<std::vector<double>> offsets(nsp);
        for (std::size_t k = 0; k < nsp; ++k) {
            const std::size_t ax = sp_axes[k];
            const double ext = hi[ax] - lo[ax];
            if (t_degenerate && nsp == 1) {
                // edge-aligned disjoint tiling: greedy reproduces it exactly
                const double r = c.mink ? h : h / c.fmax_region;
                const auto cells = static_cast<long>(std::llround(std::ceil(ext / (2.0 * r) - 1e-12)));
                const double cell = ext / static_cast<double>(std::max(cells, 1L));
                for (long j = 0; j < std::max(cells, 1L); ++j)
                    offsets[k].push_back(lo[ax] + cell * (0.5 + static_cast<double>(j)));
            } else {
                const auto cols = static_cast<long>(std::ceil(ext / px)) + 1;
                for (long j = -1; j <= cols; ++j)
                    offsets[k].push_back(lo[ax] + px * static_cast<double>(j));
            }
        }
        if (nsp == 0) offsets.push_back({0.0}); // timelike segment: single column

        // candidate count guard
        double count = static_cast<double>(t_centers.size());
        for (const auto& o : offsets) count *= static_cast<double>(o.size());
        if (count > static_cast<double>(opts.candidate_cap))
            throw std::invalid_argument("lattice family: delta too small for the candidate budget");

        // emit the grid (checkerboard in the 2D non-degenerate case)
        std::vector<std::size_t> idx(offsets.size(), 0);
        const bool checker = (c.mink || c.warped) && !t_degenerate && nsp == 1;
        while (true) {
            std::vector<double> sp(dim > 1 ? dim - 1 : 0, 0.0);
            for (std::size_t k = 0; k < nsp; ++k) sp[sp_axes[k] - 1] = offsets[k][idx[k]];
            for (std::size_t k = 0; k < dim - 1; ++k)
                if (std::find(sp_axes.begin(), sp_axes.end(), k + 1) == sp_axes.end())
                    sp[k] = lo[k + 1];
            for (std::size_t ti = 0; ti < t_centers.size(); ++ti) {
                if (checker) {
                    // parity from grid indices; degenerate rows excluded above
                    const auto i = static_cast<long>(ti) - 1;
                    const auto j = static_cast<long>(idx[0]) - 1;
                    if (((i + j) % 2 + 2) % 2 != 0) continue;
                }
                double t = t_centers[ti];
                if (c.warped) {
                    // keep vertices inside the warp interval
                    if (t - h < c.warped->interval_lo() || t + h > c.warped->interval_hi())
                        continue;
                }
                CausalDiamond d = vertical_diamond(c, t, sp, h);
                if (!passes_mode_constraint(c, d)) continue;
                fam.diamonds.push_back(std::move(d));
            }
            // advance mixed-radix index
            std::size_t k = 0;
            while (k < idx.size()) {
                if (++idx[k] < offsets[k].size()) break;
                idx[k++] = 0;
            }
            if (k == idx.size()) break;
        }
    }
    return fam;
}

DiamondFamily generate_random_family(const Space& space, const Region& region, double delta,
                                     CoverMode mode, double n_exponent, std::size_t count,
                                     std::uint64_t seed) {
    DiamondFamily fam;
    fam.mode = mode;
    fam.delta = delta;
    fam.n_exponent = n_exponent;
    Rng rng(seed);
    auto centers = region.sample(count, seed ^ 0xD1A0ULL);
    for (const auto& cpt : centers) {
        const double h = 0.5 * delta * rng.uniform(0.2, 0.999);
        std::vector<double> a = cpt.x, b = cpt.x;
        a[0] -= h;
        b[0] += h;
        // random spatial tilt within the causal cone
        for (std::size_t i = 1; i < a.size(); ++i) {
            const double off = 0.25 * h * rng.uniform(-1.0, 1.0);
            b[i] += off;
        }
        SpacePoint pa{space.id(), std::move(a)}, pb{space.id(), std::move(b)};
        try {
            if (!space.causal_le(pa, pb)) continue;
            CausalDiamond d = make_diamond(space, std::move(pa), std::move(pb), n_exponent);
            const double vd = space.distance(d.a, d.b);
            const bool ok = (mode == CoverMode::W) ? vd < delta : d.diam < delta;
            if (ok) fam.diamonds.push_back(std::move(d));
        } catch (const std::exception&) {
            continue;
        }
    }
    return fam;
}

} // namespace taucover
