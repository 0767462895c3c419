#pragma once

// Exact (double precision, tolerance-documented) construction of the
// parallelogram Delaunay graph by circumsquare enumeration in square space.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "paradel/geometry.h"

namespace paradel {

/// Axis-aligned square in square space: [u0, u0+side] x [v0, v0+side].
struct WitnessSquare {
    Point corner;  ///< (u0, v0)
    double side = 0.0;

    /// Strictly inside, i.e. farther than `margin` from every side.
    bool strictly_contains(Point q, double margin = kBoundaryTol) const;
    bool on_boundary(Point q, double tol = kBoundaryTol) const;
};

struct GraphEdge {
    std::size_t i = 0;  ///< i < j
    std::size_t j = 0;
    WitnessSquare witness;
};

struct GraphTriangle {
    std::size_t i = 0;  ///< i < j < k
    std::size_t j = 0;
    std::size_t k = 0;
    WitnessSquare witness;
};

/// Triangulation of the sentinel-augmented point set. Indices below
/// `n_input` refer to the caller's points; the last four are sentinels.
struct Triangulation {
    std::vector<Point> points;  ///< original coordinates
    std::size_t n_input = 0;
    std::vector<GraphEdge> edges;
    std::vector<GraphTriangle> triangles;

    bool is_sentinel(std::size_t v) const { return v >= n_input; }
};

struct DelaunayGraph {
    ShapeSpec shape{1.0, 1.5707963267948966};
    std::vector<Point> points;
    std::vector<GraphEdge> edges;          ///< sorted by (i, j)
    std::vector<GraphTriangle> triangles;  ///< triangles among original points only
    Triangulation augmented;

    bool has_edge(std::size_t a, std::size_t b) const;
};

struct GeneralPositionViolation {
    enum class Kind { SharedU, SharedV, CocircularSquare };
    Kind kind = Kind::SharedU;
    std::vector<std::size_t> indices;
    std::string description;
};

std::string_view to_string(GeneralPositionViolation::Kind k);

struct GeneralPositionReport {
    bool ok = true;
    std::vector<GeneralPositionViolation> violations;
};

/// Raised by build_graph when the input is not in general position.
class GeneralPositionError : public Error {
public:
    explicit GeneralPositionError(GeneralPositionReport r);
    GeneralPositionReport report;
};

/// Flags pairs sharing a square-space u or v coordinate (within 1e-9) and
/// quadruples with four points on the boundary of one empty circumsquare.
GeneralPositionReport check_general_position(const std::vector<Point>& points,
                                             const ShapeSpec& shape);

inline constexpr double kDefaultSentinelMargin = 1e6;

/// Appends four sentinels at the (nudged) corners of the inputs' square-space
/// bounding square scaled by `margin` about its center.
std::vector<Point> augment_sentinels(const std::vector<Point>& points, const ShapeSpec& shape,
                                     double margin = kDefaultSentinelMargin);

/// All squares having a, b, c (square-space points) on three distinct sides.
/// Throws DegenerateInputError for coincident points and DomainError when all
/// three share an axis coordinate.
std::vector<WitnessSquare> circumsquares(Point a, Point b, Point c);

/// Builds the graph. Throws GeneralPositionError when the input violates
/// general position and DomainError when fewer than two points are given.
DelaunayGraph build_graph(const std::vector<Point>& points, const ShapeSpec& shape);

/// Empty-circumsquare triangulation of an arbitrary square-space point set
/// (no sentinels added). Exposed for tests and the general-position check.
struct SquareTriangle {
    std::size_t i, j, k;
    WitnessSquare witness;
};
std::vector<SquareTriangle> empty_circumsquare_triangles(const std::vector<Point>& square_points);

struct OracleResult {
    std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< sorted, i < j
    std::vector<std::size_t> contacts;  ///< adjacent cell pairs per edge, parallel to edges
    std::size_t skipped_cells = 0;
    double cell_size = 0.0;  ///< square-space side of one raster cell
    Point origin;            ///< square-space corner of the raster window
};

/// Approximate Delaunay edges from a rasterized Chebyshev Voronoi diagram.
/// Requires resolution >= 64 and at least two points.
OracleResult grid_voronoi_oracle(const std::vector<Point>& points, const ShapeSpec& shape,
                                 int resolution);

/// Proper-crossing test between two segments (shared endpoints are not crossings).
bool segments_properly_cross(Point p1, Point p2, Point q1, Point q2);

struct StructuralReport {
    bool planar = true;
    bool edge_bound = true;       ///< |E| <= 3n - 6
    bool witnesses_valid = true;  ///< every stored witness re-validated
    bool near_triangulation = true;
    std::vector<std::string> problems;

    bool ok() const { return planar && edge_bound && witnesses_valid && near_triangulation; }
};

/// Planarity, edge count, witness re-validation and the augmented Euler check.
StructuralReport check_structure(const DelaunayGraph& g);

/// Worker count for the parallel loops; PARADEL_THREADS overrides the default.
unsigned worker_count();

}  // namespace paradel
