#pragma once

// Independent reference computations shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "paradel/construction.h"
#include "paradel/geometry.h"

namespace testing {

using paradel::Point;
using paradel::ShapeSpec;

inline const double kPi = std::numbers::pi;

inline std::vector<ShapeSpec> sample_shapes() {
    return {ShapeSpec(1.0, kPi / 2), ShapeSpec(2.0, kPi / 3), ShapeSpec(4.0, 1.0),
            ShapeSpec(1.5, 0.7), ShapeSpec(8.0, 0.3)};
}

// Parallelogram vertices from the raw shape parameters, without the square map.
inline std::array<Point, 4> parallelogram(const ShapeSpec& shape, Point corner, double scale) {
    const Point s{scale * std::sin(shape.angle()), scale * std::cos(shape.angle())};
    const Point l{0.0, scale * shape.aspect()};
    return {corner, corner + s, corner + s + l, corner + l};
}

// Signed distance of p from the boundary of a convex counterclockwise polygon;
// positive inside.
inline double depth(const std::array<Point, 4>& poly, Point p) {
    double best = 1e300;
    for (int e = 0; e < 4; ++e) {
        const Point a = poly[e], b = poly[(e + 1) % 4];
        const Point d = b - a;
        best = std::min(best, paradel::cross(d, p - a) / paradel::norm(d));
    }
    return best;
}

// Square-space images by direct formula u = x/s, v = (-c x + s y)/(A s).
inline Point square_image(const ShapeSpec& shape, Point p) {
    const double s = std::sin(shape.angle()), c = std::cos(shape.angle());
    return {p.x / s, (-c * p.x + s * p.y) / (shape.aspect() * s)};
}

// Inverse of square_image, written out by hand.
inline Point original_of(const ShapeSpec& shape, Point q) {
    const double s = std::sin(shape.angle()), c = std::cos(shape.angle());
    return {s * q.x, shape.aspect() * q.y + c * q.x};
}

// The witness square mapped back to original coordinates as a parallelogram.
inline std::array<Point, 4> witness_parallelogram(const ShapeSpec& shape, const paradel::WitnessSquare& w) {
    return parallelogram(shape, original_of(shape, w.corner), w.side);
}

// True when p is strictly inside the square-space square w by more than tol.
inline bool square_strictly_contains(const paradel::WitnessSquare& w, Point q, double tol) {
    return q.x > w.corner.x + tol && q.x < w.corner.x + w.side - tol && q.y > w.corner.y + tol &&
           q.y < w.corner.y + w.side - tol;
}

inline std::vector<Point> uniform_points(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed * 7919 + 17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

inline std::set<std::pair<std::size_t, std::size_t>> edge_set(const paradel::DelaunayGraph& g) {
    std::set<std::pair<std::size_t, std::size_t>> s;
    for (const auto& e : g.edges) s.insert({e.i, e.j});
    return s;
}

// Golden-section maximization of a unimodal function on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi, int iterations = 200) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iterations && b - a > 1e-15 * (1 + std::abs(a)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

// Coarse grid scan followed by golden-section refinement around the best cell.
template <class F>
double grid_then_golden_max(F f, double lo, double hi, int cells = 20000) {
    double best_x = lo, best = f(lo);
    for (int i = 1; i <= cells; ++i) {
        const double x = lo + (hi - lo) * i / cells;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    const double h = (hi - lo) / cells;
    return std::max(best, golden_max(f, std::max(lo, best_x - h), std::min(hi, best_x + h)));
}

}  // namespace testing
