#pragma once

// Shape definition, scenario frames and hat-basis arithmetic.
//
// The parallelogram has its long side vertical (length A) and its short side
// (length 1) along (sin t0, cos t0), where t0 is the non-obtuse angle between
// them. Every homothet of it is the image of an axis-aligned square under the
// inverse of ShapeSpec::square_map(), so emptiness questions are answered in
// "square space" with the Chebyshev metric.

#include <array>
#include <cmath>
#include <cstddef>
#include <string_view>

#include "paradel/error.h"

namespace paradel {

/// Absolute tolerance used by every on-boundary predicate (square-space units).
inline constexpr double kBoundaryTol = 1e-9;

/// Smallest accepted parallelogram angle.
inline constexpr double kMinAngle = 1e-6;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

/// Row-major 2x2 matrix.
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    Point apply(Point p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

/// The parallelogram shape: aspect ratio A >= 1 and angle t0 in (0, pi/2].
/// The short side is normalized to length 1.
class ShapeSpec {
public:
    /// Throws DomainError when aspect < 1, aspect is not finite, or the angle
    /// is outside [1e-6, pi/2].
    ShapeSpec(double aspect, double angle);

    double aspect() const { return aspect_; }
    double angle() const { return angle_; }

    Point short_vec() const { return {std::sin(angle_), std::cos(angle_)}; }
    Point long_vec() const { return {0.0, aspect_}; }

    /// Maps short_vec to (1,0) and long_vec to (0,1).
    const Mat2& square_map() const { return to_square_; }
    const Mat2& inverse_map() const { return from_square_; }

private:
    double aspect_;
    double angle_;
    Mat2 to_square_;
    Mat2 from_square_;
};

Point to_square_space(const ShapeSpec& shape, Point p);
Point from_square_space(const ShapeSpec& shape, Point q);

enum class Scenario { S1, S2, S3, S4 };

std::string_view to_string(Scenario s);

/// One of the four {xhat, yhat} coordinate frames. `theta` is the
/// counterclockwise angle between xhat and yhat; `slope_ratio` (L) is the
/// diagonal slope of the parallelogram written in hat coordinates.
struct ScenarioFrame {
    Scenario scenario = Scenario::S2;
    Point xhat;
    Point yhat;
    double theta = 0.0;
    double slope_ratio = 1.0;

    /// True for Scenarios 2 and 3 (L = A).
    bool long_side_vertical() const {
        return scenario == Scenario::S2 || scenario == Scenario::S3;
    }
};

ScenarioFrame make_frame(const ShapeSpec& shape, Scenario scenario);

struct HatCoords {
    double xh = 0.0;
    double yh = 0.0;

    friend constexpr HatCoords operator-(HatCoords a, HatCoords b) {
        return {a.xh - b.xh, a.yh - b.yh};
    }
};

/// Coordinates of `v` in the frame's basis (solves the 2x2 system).
HatCoords to_hat(const ScenarioFrame& frame, Point v);
Point from_hat(const ScenarioFrame& frame, HatCoords c);

/// Result of classifying an (oriented) pair.
struct PairFrame {
    ScenarioFrame frame;
    HatCoords delta;       ///< hat coordinates of b - a after orientation
    bool swapped = false;  ///< true when a and b were exchanged
};

/// Orients the pair so that x_b > x_a (a vertical pair is oriented upward and
/// treated as slope +inf) and chooses the scenario from the slope.
/// Throws DegenerateInputError for coincident points.
PairFrame classify_scenario(const ShapeSpec& shape, Point a, Point b);

/// Euclidean length of xh*xhat + yh*yhat via the law of cosines.
double hat_norm(const ScenarioFrame& frame, HatCoords c);

/// |dy| <= L |dx| in hat coordinates (non-strict).
bool gentle_edge(const ScenarioFrame& frame, HatCoords u, HatCoords v);

/// Axis-aligned rectangle in hat coordinates.
struct HatRect {
    ScenarioFrame frame;
    HatCoords lo;
    HatCoords hi;

    double width() const { return hi.xh - lo.xh; }
    double height() const { return hi.yh - lo.yh; }
    double perimeter() const { return 2.0 * (width() + height()); }
};

enum class RectSide { W, N, E, S };

/// Tolerance used for side membership: kBoundaryTol scaled by the rectangle's
/// magnitude (sentinel-sized rectangles carry proportionally larger rounding).
double side_tolerance(const HatRect& rect);

bool on_side(const HatRect& rect, HatCoords p, RectSide side);
bool on_boundary(const HatRect& rect, HatCoords p);

/// Length walked along the sides from `from` to `to` in the clockwise sense
/// of the hat plane (W side upward, N side eastward, E side downward, S side
/// westward). Throws ContractViolation when either point is off the boundary.
double clockwise_perimeter_distance(const HatRect& rect, HatCoords from, HatCoords to);

enum class Region { A, B, C };

std::string_view to_string(Region r);

/// Splits P(a,b) by the two lines of diagonal slope L through a and b.
/// Throws DomainError when p is outside P(a,b).
Region region_partition(const ScenarioFrame& frame, HatCoords a, HatCoords b, HatCoords p);

/// A homothet of the parallelogram: corner + s*(alpha*short_vec + beta*long_vec)
/// for alpha, beta in [0,1]. Tested directly in original coordinates.
struct Homothet {
    Point corner;
    double scale = 1.0;

    std::array<Point, 4> vertices(const ShapeSpec& shape) const;
};

/// Strict interior membership (margin measured in square-space units).
bool homothet_contains(const ShapeSpec& shape, const Homothet& h, Point p,
                       double margin = kBoundaryTol);

}  // namespace paradel
