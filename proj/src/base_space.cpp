#include "taucover/base_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace taucover {

BasePoint BaseLengthSpace::interpolate(const BasePoint&, const BasePoint&, double) const {
    throw std::runtime_error(name() + ": geodesic interpolation unsupported");
}

// ---------------------------------------------------------------------------
// Euclidean

EuclideanBase::EuclideanBase(std::size_t m) : m_(m) {
    if (m == 0) throw std::invalid_argument("EuclideanBase: dimension must be >= 1");
}

std::string EuclideanBase::name() const { return "euclidean(" + std::to_string(m_) + ")"; }

double EuclideanBase::distance(const BasePoint& a, const BasePoint& b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
        const double d = b[i] - a[i];
        s += d * d;
    }
    return std::sqrt(s);
}

BasePoint EuclideanBase::interpolate(const BasePoint& a, const BasePoint& b, double s) const {
    BasePoint out(m_);
    for (std::size_t i = 0; i < m_; ++i) out[i] = a[i] + s * (b[i] - a[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Hyperbolic plane (hyperboloid model, curvature -1)

namespace {

struct H3 {
    double x0, x1, x2;
};

H3 lift(const BasePoint& p) {
    const double x1 = p[0], x2 = p[1];
    return {std::sqrt(1.0 + x1 * x1 + x2 * x2), x1, x2};
}

double mink_inner(const H3& a, const H3& b) { return a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2; }

} // namespace

double HyperbolicPlane::distance(const BasePoint& a, const BasePoint& b) const {
    const double c = mink_inner(lift(a), lift(b));
    return std::acosh(std::max(c, 1.0));
}

BasePoint HyperbolicPlane::interpolate(const BasePoint& a, const BasePoint& b, double s) const {
    const H3 A = lift(a), B = lift(b);
    const double d = distance(a, b);
    if (d < 1e-15) return a;
    // unit tangent at a toward b, then exp_a(s*d * u)
    const double ch = std::cosh(d), sh = std::sinh(d);
    const H3 u{(B.x0 - ch * A.x0) / sh, (B.x1 - ch * A.x1) / sh, (B.x2 - ch * A.x2) / sh};
    const double cs = std::cosh(s * d), ss = std::sinh(s * d);
    return {cs * A.x1 + ss * u.x1, cs * A.x2 + ss * u.x2};
}

BasePoint HyperbolicPlane::polar(double r, double theta) {
    return {std::sinh(r) * std::cos(theta), std::sinh(r) * std::sin(theta)};
}

// ---------------------------------------------------------------------------
// Finite metric graph

FiniteMetricGraph::FiniteMetricGraph(std::size_t nodes, std::vector<Edge> edges)
    : n_(nodes), edges_(std::move(edges)) {
    if (n_ == 0) throw std::invalid_argument("FiniteMetricGraph: empty node set");
    for (const auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_ || e.length <= 0.0)
            throw std::invalid_argument("FiniteMetricGraph: bad edge");
    }
    const double inf = std::numeric_limits<double>::infinity();
    dist_.assign(n_ * n_, inf);
    for (std::size_t i = 0; i < n_; ++i) dist_[i * n_ + i] = 0.0;
    for (const auto& e : edges_) {
        dist_[e.u * n_ + e.v] = std::min(dist_[e.u * n_ + e.v], e.length);
        dist_[e.v * n_ + e.u] = std::min(dist_[e.v * n_ + e.u], e.length);
    }
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                dist_[i * n_ + j] =
                    std::min(dist_[i * n_ + j], dist_[i * n_ + k] + dist_[k * n_ + j]);
}

BasePoint FiniteMetricGraph::node_point(std::size_t node) const {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].u == node) return {static_cast<double>(e), 0.0};
        if (edges_[e].v == node) return {static_cast<double>(e), edges_[e].length};
    }
    throw std::invalid_argument("FiniteMetricGraph: isolated node has no edge point");
}

double FiniteMetricGraph::distance(const BasePoint& a, const BasePoint& b) const {
    const auto ea = static_cast<std::size_t>(a[0]), eb = static_cast<std::size_t>(b[0]);
    if (ea >= edges_.size() || eb >= edges_.size())
        throw std::invalid_argument("FiniteMetricGraph: edge index out of range");
    const Edge& A = edges_[ea];
    const Edge& B = edges_[eb];
    const double sa = a[1], sb = b[1];
    if (sa < 0 || sa > A.length || sb < 0 || sb > B.length)
        throw std::invalid_argument("FiniteMetricGraph: edge parameter out of range");
    double best = std::numeric_limits<double>::infinity();
    if (ea == eb) best = std::abs(sa - sb);
    const double froma[2] = {sa, A.length - sa}; // to A.u, A.v
    const double tob[2] = {sb, B.length - sb};   // from B.u, B.v
    const std::size_t na[2] = {A.u, A.v}, nb[2] = {B.u, B.v};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            best = std::min(best, froma[i] + node_dist(na[i], nb[j]) + tob[j]);
    return best;
}

// ---------------------------------------------------------------------------

BaseHandle make_euclidean_base(std::size_t m) { return std::make_shared<const EuclideanBase>(m); }
BaseHandle make_hyperbolic_plane() { return std::make_shared<const HyperbolicPlane>(); }
BaseHandle make_metric_graph(std::size_t nodes, std::vector<FiniteMetricGraph::Edge> edges) {
    return std::make_shared<const FiniteMetricGraph>(nodes, std::move(edges));
}

BasePoint base_geodesic_point(const BaseLengthSpace& base, const BasePoint& a, const BasePoint& b,
                              double s) {
    if (!base.supports_interpolation())
        throw std::runtime_error(base.name() + ": geodesic interpolation unsupported");
    return base.interpolate(a, b, s);
}

} // namespace taucover
