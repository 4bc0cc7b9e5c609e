#include "taucover/maps.hpp"

#include <algorithm>
#include <cmath>

namespace taucover {

MapAudit audit_map(const SpacetimeMap& f, const Region& region, std::size_t n, double tol,
                   std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("audit_map: need n >= 1");
    MapAudit audit;
    const Space& X = *f.domain;
    const Space& Y = *f.codomain;
    auto pool = region.sample(std::max<std::size_t>(2 * n, 64), seed);
    Rng rng(seed ^ 0xAD17ULL);

    double dx_max = 0.0;
    std::vector<std::pair<double, double>> dpairs; // (d_X, d_Y)
    dpairs.reserve(n);

    for (std::size_t k = 0; k < n && pool.size() >= 2; ++k) {
        const SpacePoint& p = pool[rng.index(pool.size())];
        const SpacePoint& q = pool[rng.index(pool.size())];
        SpacePoint fp, fq;
        try {
            fp = f.apply(p);
            fq = f.apply(q);
        } catch (const std::exception&) {
            continue; // outside the declared domain region
        }
        ++audit.pairs_sampled;
        const double dX = X.distance(p, q);
        const double dY = Y.distance(fp, fq);
        dx_max = std::max(dx_max, dX);
        dpairs.emplace_back(dX, dY);

        if (X.chron_ll(p, q)) {
            ++audit.chron_pairs;
            const double tx = X.time_separation(p, q);
            const double ty = Y.time_separation(fp, fq);
            if (tx > 0.0) audit.empirical_lambda = std::max(audit.empirical_lambda, ty / tx);
        }
        if (X.causal_le(p, q) && !Y.causal_le(fp, fq)) ++audit.forward_violations;
        if (Y.causal_le(fp, fq) && !X.causal_le(p, q)) ++audit.dual_violations;
        // timelike Lipschitz maps satisfy f(p) << f(q) => p << q
        if (Y.chron_ll(fp, fq) && !X.chron_ll(p, q)) ++audit.chron_dual_violations;
    }

    // continuity modulus table over geometric d_X buckets
    if (dx_max > 0.0) {
        constexpr int kBuckets = 8;
        audit.modulus.resize(kBuckets);
        for (int b = 0; b < kBuckets; ++b)
            audit.modulus[b].dx_upper = dx_max * std::pow(0.5, kBuckets - 1 - b);
        for (const auto& [dx, dy] : dpairs) {
            for (auto& row : audit.modulus) {
                if (dx <= row.dx_upper) {
                    row.max_dy = std::max(row.max_dy, dy);
                    ++row.pairs;
                    break;
                }
            }
        }
    }
    if (std::isfinite(f.declared_lambda))
        audit.lambda_within_declared = audit.empirical_lambda <= f.declared_lambda + tol;
    return audit;
}

// ---------------------------------------------------------------------------
// Canonical maps

SpacetimeMap scaling_map(std::shared_ptr<const MinkowskiSpace> space, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("scaling_map: lambda must be positive");
    SpacetimeMap f;
    f.name = "scaling(" + std::to_string(lambda) + ")";
    f.domain = space;
    f.codomain = space;
    f.declared_lambda = lambda;
    f.declared_preserving = true;
    f.declared_dually_preserving = true;
    f.declared_surjective = true;
    const auto id = space->id();
    f.apply = [lambda, id](const SpacePoint& x) {
        SpacePoint y = x;
        y.space_id = id;
        for (auto& c : y.x) c *= lambda;
        return y;
    };
    f.inverse = [lambda, id](const SpacePoint& y) {
        SpacePoint x = y;
        x.space_id = id;
        for (auto& c : x.x) c /= lambda;
        return x;
    };
    return f;
}

SpacetimeMap extension_map_future(std::shared_ptr<const MinkowskiSpace> space, SpacePoint p,
                                  double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("extension_map_future: lambda must be in (0,1)");
    SpacetimeMap f;
    f.name = "extension_future(" + std::to_string(lambda) + ")";
    f.domain = space;
    f.codomain = space;
    f.declared_lambda = 1.0 / lambda;
    f.declared_preserving = true;
    f.declared_dually_preserving = true;
    f.declared_surjective = false; // onto I+(p) only; certified on samples
    auto sp = space;
    auto base = std::make_shared<SpacePoint>(std::move(p));
    f.apply = [sp, base, lambda](const SpacePoint& x) {
        if (!sp->chron_ll(*base, x))
            throw std::domain_error("extension_map_future: point outside lambda I+(p)");
        SpacePoint y = x;
        for (std::size_t i = 0; i < y.x.size(); ++i)
            y.x[i] = base->x[i] + (x.x[i] - base->x[i]) / lambda;
        return y;
    };
    f.inverse = [sp, base, lambda](const SpacePoint& y) {
        SpacePoint x = y;
        for (std::size_t i = 0; i < x.x.size(); ++i)
            x.x[i] = base->x[i] + (y.x[i] - base->x[i]) * lambda;
        return x;
    };
    return f;
}

SpacetimeMap product_extension_map(std::shared_ptr<const WarpedProductSpace> space, SpacePoint p,
                                   double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("product_extension_map: lambda must be in (0,1)");
    if (space->warp().form() != "constant" || std::abs(space->warp()(space->interval_lo()) - 1.0) > 1e-12)
        throw std::invalid_argument("product_extension_map: needs the Lorentzian product (f == 1)");
    if (!space->base().supports_interpolation())
        throw std::invalid_argument("product_extension_map: unsupported base (no geodesics)");
    SpacetimeMap f;
    f.name = "product_extension(" + std::to_string(lambda) + ")";
    f.domain = space;
    f.codomain = space;
    f.declared_preserving = (dynamic_cast<const EuclideanBase*>(&space->base()) != nullptr);
    auto sp = space;
    auto base = std::make_shared<SpacePoint>(std::move(p));
    f.apply = [sp, base, lambda](const SpacePoint& z) {
        if (!sp->chron_ll(*base, z))
            throw std::domain_error("product_extension_map: point outside lambda I+(p)");
        const double tp = base->x[0];
        const double T = tp + (z.x[0] - tp) / lambda;
        const auto xbar = sp->base_part(*base);
        const auto w = sp->base_part(z);
        const auto y = (sp->base().distance(xbar, w) < 1e-15)
                           ? w
                           : sp->base().interpolate(xbar, w, 1.0 / lambda);
        return sp->assemble(T, y);
    };
    f.inverse = [sp, base, lambda](const SpacePoint& q) {
        const double tp = base->x[0];
        const double t = tp + (q.x[0] - tp) * lambda;
        const auto xbar = sp->base_part(*base);
        const auto y = sp->base_part(q);
        const auto w = (sp->base().distance(xbar, y) < 1e-15)
                           ? y
                           : sp->base().interpolate(xbar, y, lambda);
        return sp->assemble(t, w);
    };
    return f;
}

double curvature_constant(double k, double lambda, double R) {
    if (k <= 0.0 || R <= 0.0) throw std::invalid_argument("curvature_constant: need k, R > 0");
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("curvature_constant: lambda must be in (0,1]");
    return std::sinh(k * lambda * R) / std::sinh(k * R);
}

std::optional<std::pair<SpacePoint, SpacePoint>> find_forward_violation(
    const SpacetimeMap& f, const WarpedProductSpace& space, const SpacePoint& p, double lambda,
    const std::vector<double>& radii, std::size_t angles) {
    const auto xbar = space.base_part(p);
    const double tp = p.x[0];
    // largest radii first: C(-k, lambda, R)/lambda is smallest there
    std::vector<double> rs = radii;
    std::sort(rs.rbegin(), rs.rend());
    for (double R : rs) {
        for (std::size_t a = 1; a <= angles; ++a) {
            const double theta =
                3.14159265358979 * static_cast<double>(a) / static_cast<double>(angles);
            // geodesic rays from xbar toward chart directions 0 and theta
            BasePoint aux1 = xbar, aux2 = xbar;
            aux1[0] += 1e-3;
            aux2[0] += 1e-3 * std::cos(theta);
            aux2[1] += 1e-3 * std::sin(theta);
            const double d1 = space.base().distance(xbar, aux1);
            const double d2 = space.base().distance(xbar, aux2);
            if (d1 <= 0.0 || d2 <= 0.0) continue;
            const BasePoint y1 = space.base().interpolate(xbar, aux1, R / d1);
            const BasePoint y2 = space.base().interpolate(xbar, aux2, R / d2);
            const BasePoint w1 = space.base().interpolate(xbar, y1, lambda);
            const BasePoint w2 = space.base().interpolate(xbar, y2, lambda);
            const double dw = space.base().distance(w1, w2);
            const double T1 = tp + R + 0.5;
            const double T2 = T1 + dw / lambda; // lambda-pair exactly causal
            if (T2 + 1.0 > space.interval_hi()) continue;
            const SpacePoint z1 = space.assemble(tp + lambda * (T1 - tp), w1);
            const SpacePoint z2 = space.assemble(tp + lambda * (T2 - tp), w2);
            try {
                if (!space.causal_le(z1, z2)) continue;
                const SpacePoint q1 = f.apply(z1);
                const SpacePoint q2 = f.apply(z2);
                if (!space.causal_le(q1, q2)) return std::make_pair(z1, z2);
            } catch (const std::exception&) {
                continue;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Volume comparison

VolumeComparisonReport verify_volume_comparison(const SpacetimeMap& f, const Region& region,
                                                double n_exponent, CoverMode mode,
                                                const std::vector<double>& delta_schedule,
                                                const EstimateConfig& cfg, double tolerance,
                                                std::size_t audit_pairs) {
    VolumeComparisonReport rep;
    rep.n_exponent = n_exponent;
    rep.mode = mode;
    rep.tolerance = tolerance;
    // hypotheses are audited on a thickening of the region at twice the
    // sampling pitch; points leaving the map's domain are skipped
    const std::size_t dim = f.domain->dim();
    const double pitch =
        std::pow(region.box_measure() / std::max<double>(double(cfg.sample_budget), 1.0),
                 1.0 / static_cast<double>(dim));
    rep.audit = audit_map(f, region.thicken(2.0 * pitch), audit_pairs, 1e-9,
                          cfg.seed ^ 0xA0D17ULL);

    if (rep.audit.forward_violations > 0)
        throw std::runtime_error(
            "volume comparison refused: map does not preserve the causal relation on samples");
    if (mode == CoverMode::V) {
        if (rep.audit.dual_violations > 0)
            throw std::runtime_error(
                "volume comparison refused: map does not dually preserve the causal relation");
        if (!f.declared_surjective)
            throw std::runtime_error("volume comparison refused: map is not declared surjective");
    }
    const double lambda = std::isfinite(f.declared_lambda)
                              ? f.declared_lambda
                              : rep.audit.empirical_lambda * (1.0 + 1e-9);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::runtime_error(
            "volume comparison refused: no finite timelike Lipschitz constant available");
    rep.lambda = lambda;
    rep.lambda_pow_n = std::pow(lambda, n_exponent);

    MeasureEstimate dom =
        estimate_measure(*f.domain, region, n_exponent, mode, delta_schedule, cfg);
    const Region image = Region::image(f.codomain, region, f.apply, f.inverse);
    std::vector<double> image_schedule = delta_schedule;
    MeasureEstimate img =
        estimate_measure(*f.codomain, image, n_exponent, mode, image_schedule, cfg);
    rep.estimate_domain = dom.value;
    rep.estimate_image = img.value;
    rep.ratio = (dom.value > 0.0) ? img.value / dom.value : kInfinity;
    rep.pass = rep.ratio <= rep.lambda_pow_n * (1.0 + tolerance);
    return rep;
}

} // namespace taucover
