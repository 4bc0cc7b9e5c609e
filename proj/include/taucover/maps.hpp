#pragma once

#include <optional>

#include "taucover/measures.hpp"
#include "taucover/minkowski.hpp"
#include "taucover/warped.hpp"

namespace taucover {

/// A point map between spaces with declared causal properties; evaluations
/// must be pure. `inverse` is required for image-region membership.
struct SpacetimeMap {
    std::string name;
    SpaceHandle domain;
    SpaceHandle codomain;
    Region::PointMap apply;
    Region::PointMap inverse;
    double declared_lambda = std::numeric_limits<double>::quiet_NaN(); // NaN = unknown
    bool declared_preserving = false;
    bool declared_dually_preserving = false;
    bool declared_surjective = false;
};

struct ModulusRow {
    double dx_upper = 0.0; // bucket upper edge in d_X
    double max_dy = 0.0;
    std::size_t pairs = 0;
};

struct MapAudit {
    std::size_t pairs_sampled = 0;
    std::size_t chron_pairs = 0;
    double empirical_lambda = 0.0; // sup tau_Y(f p, f q) / tau_X(p,q) over p << q
    std::size_t forward_violations = 0;    // p <= q without f(p) <= f(q)
    std::size_t dual_violations = 0;       // f(p) <= f(q) without p <= q
    std::size_t chron_dual_violations = 0; // f(p) << f(q) without p << q
    std::vector<ModulusRow> modulus;    // d_Y vs d_X continuity table
    bool lambda_within_declared = true; // empirical <= declared + tol (when declared)
};

MapAudit audit_map(const SpacetimeMap& f, const Region& region, std::size_t n, double tol,
                   std::uint64_t seed);

/// x -> lambda * x on Minkowski space: timelike lambda-Lipschitz, causality
/// preserving and dually preserving, surjective.
SpacetimeMap scaling_map(std::shared_ptr<const MinkowskiSpace> space, double lambda);

/// The future extension map on Minkowski space: lambda*q -> q about p, i.e.
/// x -> p + (x - p)/lambda on lambda I+(p) = I+(p); timelike (1/lambda)-
/// Lipschitz. Points outside the domain throw std::domain_error.
SpacetimeMap extension_map_future(std::shared_ptr<const MinkowskiSpace> space, SpacePoint p,
                                  double lambda);

/// The product extension map on a warped product with constant warp 1:
/// lambda*q -> q where lambda*q = (t_p + lambda(T - t_p), Gamma(lambda d)).
/// Needs a base with geodesic interpolation.
SpacetimeMap product_extension_map(std::shared_ptr<const WarpedProductSpace> space, SpacePoint p,
                                   double lambda);

/// sinh(k lambda R) / sinh(k R); satisfies C/lambda < 1 for lambda in (0,1).
double curvature_constant(double k, double lambda, double R);

/// Directed search for a forward-causality violation of the product
/// extension map over a hyperbolic base, seeded where C(-k, lambda, R)
/// pinpoints failure (large base separation R). Returns a violating domain
/// pair (verified against the space oracles) or nullopt.
std::optional<std::pair<SpacePoint, SpacePoint>> find_forward_violation(
    const SpacetimeMap& f, const WarpedProductSpace& space, const SpacePoint& p, double lambda,
    const std::vector<double>& radii, std::size_t angles);

struct VolumeComparisonReport {
    double n_exponent = 0.0;
    CoverMode mode = CoverMode::V;
    double lambda = 0.0;
    double lambda_pow_n = 0.0;
    double estimate_domain = 0.0;
    double estimate_image = 0.0;
    double ratio = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    MapAudit audit;
};

/// Estimates the measure of A and of f(A) and checks the measured ratio
/// against lambda^N (PASS when ratio <= lambda^N * (1 + tolerance)). Throws
/// std::runtime_error naming the violated hypothesis when the audit fails
/// the mode's requirements (V: surjectivity and dual preservation; W:
/// forward preservation).
VolumeComparisonReport verify_volume_comparison(const SpacetimeMap& f, const Region& region,
                                                double n_exponent, CoverMode mode,
                                                const std::vector<double>& delta_schedule,
                                                const EstimateConfig& cfg,
                                                double tolerance = 0.1,
                                                std::size_t audit_pairs = 4000);

} // namespace taucover
