#include "paradel/geometry.h"

#include <algorithm>
#include <numbers>
#include <string>

namespace paradel {

ShapeSpec::ShapeSpec(double aspect, double angle) : aspect_(aspect), angle_(angle) {
    if (!std::isfinite(aspect) || aspect < 1.0)
        throw DomainError("aspect ratio must be finite and >= 1, got " + std::to_string(aspect));
    if (!std::isfinite(angle) || angle < kMinAngle || angle > std::numbers::pi / 2 + 1e-15)
        throw DomainError("angle must lie in [1e-6, pi/2] radians, got " + std::to_string(angle));
    const double s = std::sin(angle);
    const double c = std::cos(angle);
    const double k = 1.0 / (aspect * s);
    to_square_ = {k * aspect, 0.0, -k * c, k * s};
    // Columns are short_vec and long_vec.
    from_square_ = {s, 0.0, c, aspect};
}

Point to_square_space(const ShapeSpec& shape, Point p) { return shape.square_map().apply(p); }

Point from_square_space(const ShapeSpec& shape, Point q) { return shape.inverse_map().apply(q); }

std::string_view to_string(Scenario s) {
    switch (s) {
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    case Scenario::S3: return "S3";
    case Scenario::S4: return "S4";
    }
    return "?";
}

ScenarioFrame make_frame(const ShapeSpec& shape, Scenario scenario) {
    const Point slanted = shape.short_vec();
    const double a = shape.aspect();
    const double t0 = shape.angle();
    const double pi = std::numbers::pi;
    switch (scenario) {
    case Scenario::S1: return {scenario, {0.0, -1.0}, slanted, pi - t0, 1.0 / a};
    case Scenario::S2: return {scenario, slanted, {0.0, -1.0}, pi - t0, a};
    case Scenario::S3: return {scenario, slanted, {0.0, 1.0}, t0, a};
    case Scenario::S4: return {scenario, {0.0, 1.0}, slanted, t0, 1.0 / a};
    }
    throw DomainError("unknown scenario");
}

HatCoords to_hat(const ScenarioFrame& frame, Point v) {
    const double det = cross(frame.xhat, frame.yhat);
    return {cross(v, frame.yhat) / det, cross(frame.xhat, v) / det};
}

Point from_hat(const ScenarioFrame& frame, HatCoords c) {
    return c.xh * frame.xhat + c.yh * frame.yhat;
}

PairFrame classify_scenario(const ShapeSpec& shape, Point a, Point b) {
    Point d = b - a;
    if (d.x == 0.0 && d.y == 0.0)
        throw DegenerateInputError("classify_scenario: coincident points");
    bool swapped = false;
    if (d.x < 0.0 || (d.x == 0.0 && d.y < 0.0)) {
        d = -1.0 * d;
        swapped = true;
    }
    const double s = std::sin(shape.angle());
    const double c = std::cos(shape.angle());
    const double a_ = shape.aspect();

    // Slope comparisons are cross-multiplied (d.x > 0) to keep breakpoints exact.
    Scenario sc = Scenario::S4;
    if (d.x > 0.0) {
        if (d.y * s <= (c - a_) * d.x)
            sc = Scenario::S1;
        else if (d.y * s <= c * d.x)
            sc = Scenario::S2;
        else if (d.y * s <= (c + a_) * d.x)
            sc = Scenario::S3;
    }
    PairFrame out{make_frame(shape, sc), {}, swapped};
    out.delta = to_hat(out.frame, d);
    return out;
}

double hat_norm(const ScenarioFrame& frame, HatCoords c) {
    const double sq = c.xh * c.xh + c.yh * c.yh + 2.0 * c.xh * c.yh * std::cos(frame.theta);
    return std::sqrt(std::max(0.0, sq));
}

bool gentle_edge(const ScenarioFrame& frame, HatCoords u, HatCoords v) {
    return std::abs(v.yh - u.yh) <= frame.slope_ratio * std::abs(v.xh - u.xh);
}

double side_tolerance(const HatRect& rect) {
    const double mag = std::max({1.0, std::abs(rect.lo.xh), std::abs(rect.lo.yh),
                                 std::abs(rect.hi.xh), std::abs(rect.hi.yh)});
    return kBoundaryTol * mag;
}

bool on_side(const HatRect& rect, HatCoords p, RectSide side) {
    const double tol = side_tolerance(rect);
    const bool in_x = p.xh >= rect.lo.xh - tol && p.xh <= rect.hi.xh + tol;
    const bool in_y = p.yh >= rect.lo.yh - tol && p.yh <= rect.hi.yh + tol;
    switch (side) {
    case RectSide::W: return in_y && std::abs(p.xh - rect.lo.xh) <= tol;
    case RectSide::E: return in_y && std::abs(p.xh - rect.hi.xh) <= tol;
    case RectSide::S: return in_x && std::abs(p.yh - rect.lo.yh) <= tol;
    case RectSide::N: return in_x && std::abs(p.yh - rect.hi.yh) <= tol;
    }
    return false;
}

bool on_boundary(const HatRect& rect, HatCoords p) {
    return on_side(rect, p, RectSide::W) || on_side(rect, p, RectSide::N) ||
           on_side(rect, p, RectSide::E) || on_side(rect, p, RectSide::S);
}

namespace {

// Arc-length position measured clockwise from the SW corner.
double clockwise_position(const HatRect& r, HatCoords p) {
    const double w = r.width();
    const double h = r.height();
    if (on_side(r, p, RectSide::W)) return std::clamp(p.yh - r.lo.yh, 0.0, h);
    if (on_side(r, p, RectSide::N)) return h + std::clamp(p.xh - r.lo.xh, 0.0, w);
    if (on_side(r, p, RectSide::E)) return h + w + std::clamp(r.hi.yh - p.yh, 0.0, h);
    if (on_side(r, p, RectSide::S)) return 2 * h + w + std::clamp(r.hi.xh - p.xh, 0.0, w);
    throw ContractViolation("clockwise_perimeter_distance: point is not on the rectangle boundary");
}

}  // namespace

double clockwise_perimeter_distance(const HatRect& rect, HatCoords from, HatCoords to) {
    const double per = rect.perimeter();
    const double d = clockwise_position(rect, to) - clockwise_position(rect, from);
    double out = d < 0.0 ? d + per : d;
    if (out >= per) out -= per;
    // Same point reached through the SW corner wrap.
    if (std::abs(out - per) <= side_tolerance(rect)) out = 0.0;
    return out;
}

std::string_view to_string(Region r) {
    switch (r) {
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::C: return "C";
    }
    return "?";
}

Region region_partition(const ScenarioFrame& frame, HatCoords a, HatCoords b, HatCoords p) {
    const double tol = kBoundaryTol;
    const double x_lo = std::min(a.xh, b.xh), x_hi = std::max(a.xh, b.xh);
    const double y_lo = std::min(a.yh, b.yh), y_hi = std::max(a.yh, b.yh);
    if (p.xh < x_lo - tol || p.xh > x_hi + tol || p.yh < y_lo - tol || p.yh > y_hi + tol)
        throw DomainError("region_partition: point outside P(a,b)");
    const double L = frame.slope_ratio;
    if (L * (p.xh - a.xh) < p.yh - a.yh) return Region::A;
    if (L * (b.xh - p.xh) < b.yh - p.yh) return Region::C;
    return Region::B;
}

std::array<Point, 4> Homothet::vertices(const ShapeSpec& shape) const {
    const Point s = scale * shape.short_vec();
    const Point l = scale * shape.long_vec();
    return {corner, corner + s, corner + s + l, corner + l};
}

bool homothet_contains(const ShapeSpec& shape, const Homothet& h, Point p, double margin) {
    const Point s = shape.short_vec();
    const Point l = shape.long_vec();
    const Point d = p - h.corner;
    const double det = cross(s, l);
    // Coefficients along the unit-square axes of the homothet.
    const double alpha = cross(d, l) / det;
    const double beta = cross(s, d) / det;
    return alpha > margin && alpha < h.scale - margin && beta > margin && beta < h.scale - margin;
}

}  // namespace paradel
