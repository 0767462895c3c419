#include "paradel/construction.h"

#include "parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace paradel {

bool WitnessSquare::strictly_contains(Point q, double margin) const {
    return q.x > corner.x + margin && q.x < corner.x + side - margin &&
           q.y > corner.y + margin && q.y < corner.y + side - margin;
}

bool WitnessSquare::on_boundary(Point q, double tol) const {
    const double u1 = corner.x + side, v1 = corner.y + side;
    const bool in_u = q.x >= corner.x - tol && q.x <= u1 + tol;
    const bool in_v = q.y >= corner.y - tol && q.y <= v1 + tol;
    if (!in_u || !in_v) return false;
    return std::abs(q.x - corner.x) <= tol || std::abs(q.x - u1) <= tol ||
           std::abs(q.y - corner.y) <= tol || std::abs(q.y - v1) <= tol;
}

bool DelaunayGraph::has_edge(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{a, b},
                               [](const GraphEdge& e, const std::pair<std::size_t, std::size_t>& k) {
                                   return std::pair{e.i, e.j} < k;
                               });
    return it != edges.end() && it->i == a && it->j == b;
}

std::string_view to_string(GeneralPositionViolation::Kind k) {
    switch (k) {
    case GeneralPositionViolation::Kind::SharedU: return "shared-u";
    case GeneralPositionViolation::Kind::SharedV: return "shared-v";
    case GeneralPositionViolation::Kind::CocircularSquare: return "cocircular-square";
    }
    return "?";
}

namespace {

std::string describe_report(const GeneralPositionReport& r) {
    std::ostringstream os;
    os << "input is not in general position (" << r.violations.size() << " violation"
       << (r.violations.size() == 1 ? "" : "s") << ")";
    if (!r.violations.empty()) os << "; first: " << r.violations.front().description;
    return os.str();
}

}  // namespace

GeneralPositionError::GeneralPositionError(GeneralPositionReport r)
    : Error(describe_report(r)), report(std::move(r)) {}

unsigned worker_count() {
    if (const char* env = std::getenv("PARADEL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

namespace {

using detail::parallel_for;

enum Side { kLeft, kRight, kBottom, kTop };

// Solves one side assignment; nullopt when the square is invalid.
std::optional<WitnessSquare> solve_assignment(const std::array<Point, 3>& p,
                                              const std::array<int, 3>& side) {
    std::optional<double> ul, ur, vb, vt;
    for (int m = 0; m < 3; ++m) {
        switch (side[m]) {
        case kLeft: ul = p[m].x; break;
        case kRight: ur = p[m].x; break;
        case kBottom: vb = p[m].y; break;
        case kTop: vt = p[m].y; break;
        }
    }
    double u0, v0, t;
    if (ul && ur) {
        t = *ur - *ul;
        u0 = *ul;
        v0 = vb ? *vb : *vt - t;
    } else {
        t = *vt - *vb;
        v0 = *vb;
        u0 = ul ? *ul : *ur - t;
    }
    if (!(t > kBoundaryTol)) return std::nullopt;
    const double tol = kBoundaryTol;
    for (int m = 0; m < 3; ++m) {
        const bool vertical_side = side[m] == kLeft || side[m] == kRight;
        const double c = vertical_side ? p[m].y : p[m].x;
        const double lo = vertical_side ? v0 : u0;
        if (c < lo - tol || c > lo + t + tol) return std::nullopt;
    }
    return WitnessSquare{{u0, v0}, t};
}

bool same_square(const WitnessSquare& a, const WitnessSquare& b) {
    return std::abs(a.corner.x - b.corner.x) <= kBoundaryTol &&
           std::abs(a.corner.y - b.corner.y) <= kBoundaryTol &&
           std::abs(a.side - b.side) <= kBoundaryTol;
}

std::vector<WitnessSquare> circumsquares_unchecked(Point a, Point b, Point c) {
    const std::array<Point, 3> pts{a, b, c};
    std::vector<WitnessSquare> out;
    for (int s0 = 0; s0 < 4; ++s0)
        for (int s1 = 0; s1 < 4; ++s1)
            for (int s2 = 0; s2 < 4; ++s2) {
                if (s0 == s1 || s0 == s2 || s1 == s2) continue;
                auto sq = solve_assignment(pts, {s0, s1, s2});
                if (!sq) continue;
                if (std::none_of(out.begin(), out.end(),
                                 [&](const WitnessSquare& w) { return same_square(w, *sq); }))
                    out.push_back(*sq);
            }
    return out;
}

bool all_share(double a, double b, double c) {
    return std::abs(a - b) <= kBoundaryTol && std::abs(b - c) <= kBoundaryTol &&
           std::abs(a - c) <= kBoundaryTol;
}

// Points sorted by square-space u, for range queries over square interiors.
struct UIndex {
    std::vector<std::size_t> order;
    std::vector<double> us;

    explicit UIndex(const std::vector<Point>& pts) : order(pts.size()) {
        for (std::size_t i = 0; i < pts.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t l, std::size_t r) { return pts[l].x < pts[r].x; });
        us.reserve(pts.size());
        for (auto i : order) us.push_back(pts[i].x);
    }

    template <class Fn>
    bool any_in_range(double lo, double hi, Fn&& fn) const {
        auto it = std::upper_bound(us.begin(), us.end(), lo);
        for (auto k = static_cast<std::size_t>(it - us.begin()); k < us.size() && us[k] < hi; ++k)
            if (fn(order[k])) return true;
        return false;
    }
};

bool square_is_empty(const WitnessSquare& sq, const std::vector<Point>& pts, const UIndex& index) {
    return !index.any_in_range(sq.corner.x + kBoundaryTol, sq.corner.x + sq.side - kBoundaryTol,
                               [&](std::size_t m) { return sq.strictly_contains(pts[m]); });
}

bool smaller_square(const WitnessSquare& a, const WitnessSquare& b) {
    if (a.side != b.side) return a.side < b.side;
    if (a.corner.x != b.corner.x) return a.corner.x < b.corner.x;
    return a.corner.y < b.corner.y;
}

// Shrinks `w` to the smallest square inside it that keeps p and q on its boundary.
WitnessSquare shrink_to_pair(const WitnessSquare& w, Point p, Point q) {
    const double d = std::max(std::abs(p.x - q.x), std::abs(p.y - q.y));
    const double u0 = std::max(w.corner.x, std::max(p.x, q.x) - d);
    const double v0 = std::max(w.corner.y, std::max(p.y, q.y) - d);
    return {{u0, v0}, d};
}

}  // namespace

std::vector<WitnessSquare> circumsquares(Point a, Point b, Point c) {
    if (a == b || b == c || a == c)
        throw DegenerateInputError("circumsquares: coincident points");
    if (all_share(a.x, b.x, c.x) || all_share(a.y, b.y, c.y))
        throw DomainError("circumsquares: points are collinear along a square-space axis");
    return circumsquares_unchecked(a, b, c);
}

std::vector<SquareTriangle> empty_circumsquare_triangles(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    const UIndex index(pts);
    std::mutex mu;
    std::vector<SquareTriangle> all;
    parallel_for(n, [&](std::size_t i) {
        std::vector<SquareTriangle> local;
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (pts[i] == pts[j] || pts[j] == pts[k] || pts[i] == pts[k]) continue;
                std::optional<WitnessSquare> best;
                for (const auto& sq : circumsquares_unchecked(pts[i], pts[j], pts[k])) {
                    if (best && !smaller_square(sq, *best)) continue;
                    if (square_is_empty(sq, pts, index)) best = sq;
                }
                if (best) local.push_back({i, j, k, *best});
            }
        std::lock_guard lock(mu);
        all.insert(all.end(), local.begin(), local.end());
    });
    std::sort(all.begin(), all.end(), [](const SquareTriangle& l, const SquareTriangle& r) {
        return std::tie(l.i, l.j, l.k) < std::tie(r.i, r.j, r.k);
    });
    return all;
}

GeneralPositionReport check_general_position(const std::vector<Point>& points,
                                             const ShapeSpec& shape) {
    GeneralPositionReport report;
    std::vector<Point> sq;
    sq.reserve(points.size());
    for (const auto& p : points) sq.push_back(to_square_space(shape, p));

    auto scan_axis = [&](bool use_u) {
        std::vector<std::size_t> order(sq.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        auto coord = [&](std::size_t i) { return use_u ? sq[i].x : sq[i].y; };
        std::sort(order.begin(), order.end(),
                  [&](std::size_t l, std::size_t r) { return coord(l) < coord(r); });
        for (std::size_t a = 0; a < order.size(); ++a)
            for (std::size_t b = a + 1;
                 b < order.size() && coord(order[b]) - coord(order[a]) <= kBoundaryTol; ++b) {
                const auto i = std::min(order[a], order[b]);
                const auto j = std::max(order[a], order[b]);
                std::ostringstream os;
                os << "points " << i << " and " << j << " share square-space "
                   << (use_u ? "u" : "v");
                report.violations.push_back({use_u ? GeneralPositionViolation::Kind::SharedU
                                                   : GeneralPositionViolation::Kind::SharedV,
                                             {i, j}, os.str()});
            }
    };
    scan_axis(true);
    scan_axis(false);

    // Four points on the boundary of an empty square.
    const std::size_t n = sq.size();
    const UIndex index(sq);
    std::mutex mu;
    std::vector<GeneralPositionViolation> quads;
    parallel_for(n, [&](std::size_t i) {
        std::vector<GeneralPositionViolation> local;
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (sq[i] == sq[j] || sq[j] == sq[k] || sq[i] == sq[k]) continue;
                for (const auto& w : circumsquares_unchecked(sq[i], sq[j], sq[k])) {
                    if (!square_is_empty(w, sq, index)) continue;
                    for (std::size_t m = 0; m < n; ++m) {
                        // Report each quadruple once, from its three smallest indices.
                        if (m <= k || !w.on_boundary(sq[m])) continue;
                        std::ostringstream os;
                        os << "points " << i << ", " << j << ", " << k << ", " << m
                           << " lie on one empty homothet boundary";
                        local.push_back({GeneralPositionViolation::Kind::CocircularSquare,
                                         {i, j, k, m}, os.str()});
                    }
                }
            }
        std::lock_guard lock(mu);
        quads.insert(quads.end(), local.begin(), local.end());
    });
    std::sort(quads.begin(), quads.end(),
              [](const auto& l, const auto& r) { return l.indices < r.indices; });
    quads.erase(std::unique(quads.begin(), quads.end(),
                            [](const auto& l, const auto& r) { return l.indices == r.indices; }),
                quads.end());
    report.violations.insert(report.violations.end(), quads.begin(), quads.end());
    report.ok = report.violations.empty();
    return report;
}

std::vector<Point> augment_sentinels(const std::vector<Point>& points, const ShapeSpec& shape,
                                     double margin) {
    if (points.empty()) throw DomainError("augment_sentinels: empty point set");
    if (!(margin > 1.0)) throw DomainError("augment_sentinels: margin must exceed 1");
    double umin = std::numeric_limits<double>::infinity(), umax = -umin;
    double vmin = umin, vmax = -umin;
    for (const auto& p : points) {
        const Point q = to_square_space(shape, p);
        umin = std::min(umin, q.x);
        umax = std::max(umax, q.x);
        vmin = std::min(vmin, q.y);
        vmax = std::max(vmax, q.y);
    }
    double side = std::max(umax - umin, vmax - vmin);
    if (side < 1e-12) side = 1.0;
    const Point center{(umin + umax) / 2, (vmin + vmax) / 2};
    const double half = margin * side / 2;
    const double nudge = 1e-3 * margin * side;
    // SW, SE, NE, NW with distinct per-corner offsets.
    const std::array<Point, 4> corners{{{-half, -half}, {half, -half}, {half, half}, {-half, half}}};
    const std::array<Point, 4> offsets{{{0, 0}, {1, 2}, {3, -1}, {2, 1}}};
    std::vector<Point> out = points;
    for (int c = 0; c < 4; ++c)
        out.push_back(from_square_space(shape, center + corners[c] + nudge * offsets[c]));
    return out;
}

DelaunayGraph build_graph(const std::vector<Point>& points, const ShapeSpec& shape) {
    if (points.size() < 2) throw DomainError("build_graph: need at least two points");
    auto report = check_general_position(points, shape);
    if (!report.ok) throw GeneralPositionError(std::move(report));

    DelaunayGraph g;
    g.shape = shape;
    g.points = points;
    const std::size_t n = points.size();

    Triangulation& tri = g.augmented;
    tri.points = augment_sentinels(points, shape);
    tri.n_input = n;
    std::vector<Point> sq;
    sq.reserve(tri.points.size());
    for (const auto& p : tri.points) sq.push_back(to_square_space(shape, p));

    for (const auto& t : empty_circumsquare_triangles(sq))
        tri.triangles.push_back({t.i, t.j, t.k, t.witness});

    std::map<std::pair<std::size_t, std::size_t>, WitnessSquare> edge_map;
    for (const auto& t : tri.triangles)
        for (auto [a, b] : {std::pair{t.i, t.j}, std::pair{t.i, t.k}, std::pair{t.j, t.k}})
            edge_map.try_emplace({a, b}, t.witness);
    for (const auto& [key, w] : edge_map) tri.edges.push_back({key.first, key.second, w});

    if (n == 2) {
        const Point p = sq[0], q = sq[1];
        const double d = std::max(std::abs(p.x - q.x), std::abs(p.y - q.y));
        g.edges.push_back({0, 1, {{std::min(p.x, q.x), std::min(p.y, q.y)}, d}});
        return g;
    }
    for (const auto& e : tri.edges)
        if (e.j < n) g.edges.push_back({e.i, e.j, shrink_to_pair(e.witness, sq[e.i], sq[e.j])});
    for (const auto& t : tri.triangles)
        if (t.k < n) g.triangles.push_back(t);
    return g;
}

OracleResult grid_voronoi_oracle(const std::vector<Point>& points, const ShapeSpec& shape,
                                 int resolution) {
    if (resolution < 64) throw DomainError("grid_voronoi_oracle: resolution must be >= 64");
    if (points.size() < 2) throw DomainError("grid_voronoi_oracle: need at least two points");
    std::vector<Point> sq;
    for (const auto& p : points) sq.push_back(to_square_space(shape, p));
    double umin = std::numeric_limits<double>::infinity(), umax = -umin, vmin = umin, vmax = -umin;
    for (const auto& q : sq) {
        umin = std::min(umin, q.x);
        umax = std::max(umax, q.x);
        vmin = std::min(vmin, q.y);
        vmax = std::max(vmax, q.y);
    }
    double extent = std::max(umax - umin, vmax - vmin);
    if (extent < 1e-12) extent = 1.0;
    // Bounding square padded by half its side on every side.
    const double window = 2.0 * extent;
    const Point center{(umin + umax) / 2, (vmin + vmax) / 2};
    OracleResult out;
    out.origin = {center.x - window / 2, center.y - window / 2};
    out.cell_size = window / resolution;

    const auto res = static_cast<std::size_t>(resolution);
    std::vector<int> label(res * res, -1);
    std::atomic<std::size_t> skipped{0};
    parallel_for(res, [&](std::size_t row) {
        std::size_t local_skipped = 0;
        const double v = out.origin.y + (static_cast<double>(row) + 0.5) * out.cell_size;
        for (std::size_t col = 0; col < res; ++col) {
            const double u = out.origin.x + (static_cast<double>(col) + 0.5) * out.cell_size;
            double best = std::numeric_limits<double>::infinity(), second = best;
            int who = -1;
            for (std::size_t s = 0; s < sq.size(); ++s) {
                const double d = std::max(std::abs(sq[s].x - u), std::abs(sq[s].y - v));
                if (d < best) {
                    second = best;
                    best = d;
                    who = static_cast<int>(s);
                } else if (d < second) {
                    second = d;
                }
            }
            if (second - best <= 1e-12) {
                ++local_skipped;
                continue;
            }
            label[row * res + col] = who;
        }
        skipped += local_skipped;
    });
    out.skipped_cells = skipped;

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> contact;
    auto link = [&](int a, int b) {
        if (a < 0 || b < 0 || a == b) return;
        ++contact[{static_cast<std::size_t>(std::min(a, b)), static_cast<std::size_t>(std::max(a, b))}];
    };
    for (std::size_t row = 0; row < res; ++row)
        for (std::size_t col = 0; col < res; ++col) {
            const int here = label[row * res + col];
            if (col + 1 < res) link(here, label[row * res + col + 1]);
            if (row + 1 < res) link(here, label[(row + 1) * res + col]);
        }
    for (const auto& [e, c] : contact) {
        out.edges.push_back(e);
        out.contacts.push_back(c);
    }
    return out;
}

namespace {

int orientation(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    const double scale = std::max({norm(b - a) * norm(c - a), 1e-300});
    if (std::abs(v) <= 1e-12 * scale) return 0;
    return v > 0 ? 1 : -1;
}

}  // namespace

bool segments_properly_cross(Point p1, Point p2, Point q1, Point q2) {
    if (p1 == q1 || p1 == q2 || p2 == q1 || p2 == q2) return false;
    const int o1 = orientation(p1, p2, q1), o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1), o4 = orientation(q1, q2, p2);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

StructuralReport check_structure(const DelaunayGraph& g) {
    StructuralReport r;
    const std::size_t n = g.points.size();
    for (std::size_t a = 0; a < g.edges.size(); ++a)
        for (std::size_t b = a + 1; b < g.edges.size(); ++b) {
            const auto& e = g.edges[a];
            const auto& f = g.edges[b];
            if (segments_properly_cross(g.points[e.i], g.points[e.j], g.points[f.i], g.points[f.j])) {
                r.planar = false;
                r.problems.push_back("edges (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                     ") and (" + std::to_string(f.i) + "," + std::to_string(f.j) +
                                     ") cross");
            }
        }
    if (n >= 3 && g.edges.size() > 3 * n - 6) {
        r.edge_bound = false;
        r.problems.push_back("edge count " + std::to_string(g.edges.size()) + " exceeds 3n-6");
    }

    std::vector<Point> sq;
    for (const auto& p : g.points) sq.push_back(to_square_space(g.shape, p));
    auto validate = [&](const WitnessSquare& w, std::initializer_list<std::size_t> on, const std::string& what) {
        for (auto v : on)
            if (!w.on_boundary(sq[v])) {
                r.witnesses_valid = false;
                r.problems.push_back(what + ": vertex " + std::to_string(v) + " off witness boundary");
            }
        for (std::size_t m = 0; m < n; ++m)
            if (w.strictly_contains(sq[m])) {
                r.witnesses_valid = false;
                r.problems.push_back(what + ": point " + std::to_string(m) + " inside witness");
            }
    };
    for (const auto& e : g.edges)
        validate(e.witness, {e.i, e.j}, "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
    for (const auto& t : g.triangles)
        validate(t.witness, {t.i, t.j, t.k},
                 "triangle (" + std::to_string(t.i) + "," + std::to_string(t.j) + "," +
                     std::to_string(t.k) + ")");

    // Augmented set: a triangulated quadrilateral hull has T = 2V - 6, E = 3V - 7,
    // every edge bordering one or two triangles and exactly four hull edges.
    const auto& aug = g.augmented;
    if (!aug.points.empty() && g.points.size() >= 2) {
        const std::size_t V = aug.points.size();
        std::map<std::pair<std::size_t, std::size_t>, int> uses;
        for (const auto& t : aug.triangles) {
            ++uses[{t.i, t.j}];
            ++uses[{t.i, t.k}];
            ++uses[{t.j, t.k}];
        }
        std::size_t boundary = 0;
        bool bad_use = false;
        for (const auto& [key, c] : uses) {
            if (c == 1) ++boundary;
            if (c < 1 || c > 2) bad_use = true;
        }
        const std::size_t E = aug.edges.size(), T = aug.triangles.size();
        const bool euler = V + T + 1 == E + 2;
        if (!euler || bad_use || boundary != 4 || T != 2 * V - 6 || E != 3 * V - 7) {
            r.near_triangulation = false;
            r.problems.push_back("augmented set is not a near-triangulation: V=" + std::to_string(V) +
                                 " E=" + std::to_string(E) + " T=" + std::to_string(T) +
                                 " hull edges=" + std::to_string(boundary));
        }
    }
    return r;
}

}  // namespace paradel
