#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace taucover {

/// Coordinates of a point of a base length space. Euclidean: cartesian
/// coordinates. Hyperbolic plane: the two spatial hyperboloid coordinates
/// (x1, x2); the sheet coordinate x0 = sqrt(1 + x1^2 + x2^2) is implied.
/// Metric graph: (edge index, arclength parameter in [0, edge length]).
using BasePoint = std::vector<double>;

/// A length metric space usable as the fibre of a warped product.
class BaseLengthSpace {
public:
    virtual ~BaseLengthSpace() = default;
    virtual std::string name() const = 0;
    virtual std::size_t coord_dim() const = 0;
    virtual double distance(const BasePoint& a, const BasePoint& b) const = 0;

    virtual bool supports_interpolation() const { return false; }
    /// Point at arclength s*distance(a,b) along a minimizing geodesic from a
    /// to b; s may exceed 1 where the geodesic extends (Euclidean, hyperbolic).
    virtual BasePoint interpolate(const BasePoint& a, const BasePoint& b, double s) const;
};

using BaseHandle = std::shared_ptr<const BaseLengthSpace>;

class EuclideanBase : public BaseLengthSpace {
public:
    explicit EuclideanBase(std::size_t m);
    std::string name() const override;
    std::size_t coord_dim() const override { return m_; }
    double distance(const BasePoint& a, const BasePoint& b) const override;
    bool supports_interpolation() const override { return true; }
    BasePoint interpolate(const BasePoint& a, const BasePoint& b, double s) const override;

private:
    std::size_t m_;
};

/// Hyperbolic plane of curvature -1 in hyperboloid coordinates; distance
/// arccosh(<a,b>_M), geodesics by hyperbolic linear combination.
class HyperbolicPlane : public BaseLengthSpace {
public:
    std::string name() const override { return "hyperbolic_plane"; }
    std::size_t coord_dim() const override { return 2; }
    double distance(const BasePoint& a, const BasePoint& b) const override;
    bool supports_interpolation() const override { return true; }
    BasePoint interpolate(const BasePoint& a, const BasePoint& b, double s) const override;

    /// Point at hyperbolic distance r from the origin in direction theta.
    static BasePoint polar(double r, double theta);
};

/// Finite weighted graph as a length space; points live on edges.
class FiniteMetricGraph : public BaseLengthSpace {
public:
    struct Edge {
        std::size_t u, v;
        double length;
    };

    FiniteMetricGraph(std::size_t nodes, std::vector<Edge> edges);

    std::string name() const override { return "metric_graph"; }
    std::size_t coord_dim() const override { return 2; } // (edge, s)
    double distance(const BasePoint& a, const BasePoint& b) const override;

    BasePoint node_point(std::size_t node) const;
    std::size_t node_count() const { return n_; }

private:
    double node_dist(std::size_t u, std::size_t v) const { return dist_[u * n_ + v]; }
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<double> dist_; // all-pairs shortest path over nodes
};

BaseHandle make_euclidean_base(std::size_t m);
BaseHandle make_hyperbolic_plane();
BaseHandle make_metric_graph(std::size_t nodes, std::vector<FiniteMetricGraph::Edge> edges);

/// Geodesic point at fraction s of the way from a to b; throws for graph bases.
BasePoint base_geodesic_point(const BaseLengthSpace& base, const BasePoint& a, const BasePoint& b,
                              double s);

} // namespace taucover
