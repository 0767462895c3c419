#pragma once

// Shortest paths, spanning ratios, the closed-form bound and its
// one-parameter ratio functions.

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "paradel/construction.h"
#include "paradel/geometry.h"

namespace paradel {

/// All-pairs shortest path lengths with Euclidean edge weights.
class DistanceTable {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    DistanceTable(const std::vector<Point>& points,
                  const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    std::size_t size() const { return n_; }
    /// +inf when unreachable.
    double at(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
    bool reachable(std::size_t i, std::size_t j) const;
    /// Vertex sequence of one shortest path from i to j (empty when unreachable).
    std::vector<std::size_t> path(std::size_t i, std::size_t j) const;

private:
    std::size_t n_;
    std::vector<double> dist_;
    std::vector<std::size_t> pred_;  ///< pred_[s*n+t]: vertex before t on the path from s
};

DistanceTable shortest_path_table(const DelaunayGraph& g);
/// Distances over the sentinel-augmented triangulation.
DistanceTable shortest_path_table(const Triangulation& t);

struct PairRatio {
    std::size_t i = 0;
    std::size_t j = 0;
    double d_graph = 0.0;
    double d_euclid = 0.0;
    double ratio = 1.0;
    Scenario scenario = Scenario::S2;
    double per_pair_bound = 0.0;
};

struct RatioReport {
    double max_ratio = 1.0;
    std::pair<std::size_t, std::size_t> argmax_pair{0, 0};
    std::vector<PairRatio> per_pair;  ///< ordered by (i, j)
};

/// Throws DisconnectedGraphError naming the first unreachable pair.
RatioReport spanning_ratio(const DelaunayGraph& g);

/// h(A, t0): the worst-case spanning ratio.
double bound_h(const ShapeSpec& shape);

/// Right-hand side of the per-pair theorem in the pair's own hat coordinates.
/// Throws DegenerateInputError for coincident points.
double per_pair_bound(const ShapeSpec& shape, Point a, Point b);

/// Ratio functions of r = yh/xh. `theta` defaults to pi - t0.
double f23(const ShapeSpec& shape, double r);
double f23(const ShapeSpec& shape, double r, double theta);
double f14(const ShapeSpec& shape, double r);
double f14(const ShapeSpec& shape, double r, double theta);

/// Stationary points of f23 / f14 in r.
double f23_argmax(const ShapeSpec& shape, double theta);
double f14_argmax(const ShapeSpec& shape, double theta);

/// Closed-form maxima of f23 (max.span) and f14 (candidate.max).
double max_span(const ShapeSpec& shape, double theta);
double candidate_max(const ShapeSpec& shape, double theta);

struct BoundCandidates {
    double theta = 0.0;  ///< evaluation angle (pi - t0)
    double f23_at_zero = 0.0;
    double f23_limit = 1.0;
    double f23_star = 0.0;
    double f23_argmax = 0.0;
    double f14_at_zero = 0.0;
    double f14_limit = 0.0;
    double f14_star = 0.0;
    double f14_argmax = 0.0;
    double global = 0.0;

    /// f23_star >= A, f23_star >= f14_star, f23_at_zero >= f14_at_zero.
    bool dominance_holds(double aspect, double tol = 1e-12) const;
};

BoundCandidates bound_candidates(const ShapeSpec& shape);

}  // namespace paradel
