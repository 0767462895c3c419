#include <doctest.h>

#include <map>
#include <random>

#include "paradel/construction.h"
#include "paradel/sampling.h"
#include "support.h"

using namespace paradel;
using testing::kPi;

namespace {

bool has_kind(const GeneralPositionReport& r, GeneralPositionViolation::Kind k) {
    for (const auto& v : r.violations)
        if (v.kind == k) return true;
    return false;
}

bool all_on_boundary(const WitnessSquare& w, std::initializer_list<Point> pts) {
    for (const auto& p : pts)
        if (!w.on_boundary(p, 1e-9)) return false;
    return true;
}

// Independent check of a witness in original coordinates: no point deeper
// than `tol` inside the parallelogram, claimed endpoints on its boundary.
void check_witness(const ShapeSpec& shape, const std::vector<Point>& pts, const WitnessSquare& w,
                   std::initializer_list<std::size_t> on) {
    const auto poly = testing::witness_parallelogram(shape, w);
    const double tol = 1e-7 * (1 + w.side);
    for (std::size_t m = 0; m < pts.size(); ++m) CHECK(testing::depth(poly, pts[m]) <= tol);
    for (auto v : on) CHECK(std::abs(testing::depth(poly, pts[v])) <= tol);
}

}  // namespace

TEST_CASE("general position examples") {
    const ShapeSpec square(1.0, kPi / 2);
    CHECK(check_general_position({{0, 0}, {1, 1}}, square).ok);
    const auto shared_u = check_general_position({{0, 0}, {0, 1}}, square);
    CHECK_FALSE(shared_u.ok);
    CHECK(has_kind(shared_u, GeneralPositionViolation::Kind::SharedU));
    for (const auto& shape : testing::sample_shapes()) {
        const auto r = check_general_position({{0, 0}, shape.short_vec()}, shape);
        CHECK_FALSE(r.ok);
        CHECK(has_kind(r, GeneralPositionViolation::Kind::SharedV));
    }
    // Four points on one empty square's boundary.
    const auto co = check_general_position({{0, 0.3}, {0.6, 0}, {1, 0.7}, {0.4, 1}}, square);
    CHECK_FALSE(co.ok);
    CHECK(has_kind(co, GeneralPositionViolation::Kind::CocircularSquare));
    CHECK(co.ok == co.violations.empty());
}

TEST_CASE("sentinels") {
    const ShapeSpec shape(2.0, 1.0);
    const auto one = augment_sentinels({{0.3, 0.4}}, shape, 10.0);
    REQUIRE(one.size() == 5);
    CHECK(one[0] == Point{0.3, 0.4});
    const Point c = to_square_space(shape, one[0]);
    for (int k = 1; k <= 4; ++k) {
        const Point q = to_square_space(shape, one[k]);
        CHECK(std::max(std::abs(q.x - c.x), std::abs(q.y - c.y)) >= 10.0 * 0.5 * 0.99);
    }

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (const auto& sh : testing::sample_shapes()) {
            auto pts = testing::uniform_points(seed, 12);
            std::vector<Point> sq;
            double lo_u = 1e300, hi_u = -1e300, lo_v = 1e300, hi_v = -1e300;
            for (const auto& p : pts) {
                const Point q = to_square_space(sh, p);
                lo_u = std::min(lo_u, q.x), hi_u = std::max(hi_u, q.x);
                lo_v = std::min(lo_v, q.y), hi_v = std::max(hi_v, q.y);
            }
            const double side = std::max(hi_u - lo_u, hi_v - lo_v);
            const auto aug = augment_sentinels(pts, sh);
            REQUIRE(aug.size() == pts.size() + 4);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                CHECK(aug[i] == pts[i]);
                const Point qi = to_square_space(sh, pts[i]);
                for (std::size_t s = pts.size(); s < aug.size(); ++s) {
                    const Point qs = to_square_space(sh, aug[s]);
                    CHECK(std::max(std::abs(qs.x - qi.x), std::abs(qs.y - qi.y)) >= 1e5 * side);
                }
            }
            if (check_general_position(pts, sh).ok) CHECK(check_general_position(aug, sh).ok);
        }
    }
    CHECK_THROWS_AS(augment_sentinels({{0, 0}}, shape, 1.0), DomainError);
}

TEST_CASE("circumsquares examples") {
    const auto unit = circumsquares({0, 0}, {1, 1}, {0.5, 0});
    bool found = false;
    for (const auto& w : unit)
        if (std::abs(w.corner.x) < 1e-12 && std::abs(w.corner.y) < 1e-12 && std::abs(w.side - 1) < 1e-12)
            found = true;
    CHECK(found);

    const auto sqs = circumsquares({0, 0}, {2, 1}, {1, 3});
    CHECK_FALSE(sqs.empty());
    for (const auto& w : sqs) {
        CHECK(w.side > 0);
        CHECK(all_on_boundary(w, {{0, 0}, {2, 1}, {1, 3}}));
    }
    CHECK_THROWS_AS(circumsquares({1, 0}, {1, 2}, {1, 5}), DomainError);
    CHECK_THROWS_AS(circumsquares({1, 0}, {1, 0}, {2, 5}), DegenerateInputError);
}

TEST_CASE("random circumsquares are valid and distinct") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 300; ++t) {
        const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        const auto sqs = circumsquares(a, b, c);
        for (const auto& w : sqs) CHECK(all_on_boundary(w, {a, b, c}));
        // Distinct squares only.
        for (std::size_t i = 0; i < sqs.size(); ++i)
            for (std::size_t j = i + 1; j < sqs.size(); ++j)
                CHECK((std::abs(sqs[i].side - sqs[j].side) > 1e-9 ||
                       distance(sqs[i].corner, sqs[j].corner) > 1e-9));
    }
}

TEST_CASE("build_graph small examples") {
    const ShapeSpec square(1.0, kPi / 2);
    const auto two = build_graph({{0, 0}, {1, 0.5}}, square);
    REQUIRE(two.edges.size() == 1);
    CHECK(two.triangles.empty());
    check_witness(square, two.points, two.edges[0].witness, {0, 1});

    const auto tri = build_graph({{0, 0}, {1, 0.1}, {0.5, 0.9}}, square);
    CHECK(tri.edges.size() == 3);
    CHECK(tri.triangles.size() == 1);

    CHECK_THROWS_AS(build_graph({{0, 0}}, square), DomainError);
    CHECK_THROWS_AS(build_graph({{0, 0}, {0, 1}, {0.5, 0.3}}, square), GeneralPositionError);
}

TEST_CASE("edge witnesses and triangles are empty in original coordinates") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        for (const auto& shape : testing::sample_shapes()) {
            const auto pts = sample_points(seed, shape, {static_cast<std::size_t>(3 + seed % 20), 0.0});
            const auto g = build_graph(pts, shape);
            for (const auto& e : g.edges) {
                CHECK(e.i < e.j);
                check_witness(shape, pts, e.witness, {e.i, e.j});
            }
            for (const auto& t : g.triangles) check_witness(shape, pts, t.witness, {t.i, t.j, t.k});
            for (std::size_t m = 1; m < g.edges.size(); ++m)
                CHECK(std::pair{g.edges[m - 1].i, g.edges[m - 1].j} < std::pair{g.edges[m].i, g.edges[m].j});
        }
    }
}

TEST_CASE("augmented triangulation witnesses are empty and the face counts close") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ShapeSpec shape = testing::sample_shapes()[seed % 5];
        const auto g = build_graph(sample_points(seed, shape, {15, 0.0}), shape);
        const auto& t = g.augmented;
        const std::size_t V = t.points.size();
        CHECK(t.triangles.size() == 2 * V - 6);
        CHECK(t.edges.size() == 3 * V - 7);
        std::vector<Point> sq;
        for (const auto& p : t.points) sq.push_back(testing::square_image(shape, p));
        for (const auto& tr : t.triangles) {
            const double tol = 1e-9 * (1 + tr.witness.side);
            for (std::size_t m = 0; m < V; ++m) CHECK_FALSE(testing::square_strictly_contains(tr.witness, sq[m], tol));
        }
    }
}

TEST_CASE("a point inside an edge witness removes the edge") {
    const ShapeSpec shape(2.0, kPi / 3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto pts = sample_points(seed, shape, {8, 0.0});
        const auto g = build_graph(pts, shape);
        const auto& e = g.edges[seed % g.edges.size()];
        const auto& w = e.witness;
        // Drop a new point at the square's center; the old witness is no longer empty.
        const Point center = from_square_space(shape, {w.corner.x + 0.5 * w.side, w.corner.y + 0.5 * w.side});
        pts.push_back(center);
        if (!check_general_position(pts, shape).ok) continue;
        const auto g2 = build_graph(pts, shape);
        for (const auto& e2 : g2.edges)
            if (e2.i == e.i && e2.j == e.j) {
                // Still an edge only through a different empty witness.
                CHECK_FALSE(testing::square_strictly_contains(e2.witness, to_square_space(shape, center), 1e-9));
            }
    }
}

TEST_CASE("shrink closure: any empty square holding two points yields their edge") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ShapeSpec shape = testing::sample_shapes()[seed % 5];
        const auto pts = sample_points(seed, shape, {12, 0.0});
        const auto g = build_graph(pts, shape);
        const auto edges = testing::edge_set(g);
        std::vector<Point> sq;
        for (const auto& p : pts) sq.push_back(to_square_space(shape, p));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                const double du = std::abs(sq[i].x - sq[j].x), dv = std::abs(sq[i].y - sq[j].y);
                const double lo_u = std::min(sq[i].x, sq[j].x), lo_v = std::min(sq[i].y, sq[j].y);
                for (int t = 0; t < 8; ++t) {
                    const double side = std::max(du, dv) * (1 + 0.3 * u(rng));
                    const WitnessSquare w{{lo_u - (side - du) * u(rng), lo_v - (side - dv) * u(rng)}, side};
                    bool empty = true;
                    for (std::size_t m = 0; m < pts.size() && empty; ++m)
                        if (m != i && m != j && testing::square_strictly_contains(w, sq[m], -1e-9)) empty = false;
                    if (empty) CHECK(edges.count({i, j}) == 1);
                }
            }
    }
}

TEST_CASE("affine invariance") {
    const ShapeSpec unit(1.0, kPi / 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (const auto& shape : testing::sample_shapes()) {
            const auto pts = sample_points(seed, shape, {10, 0.0});
            std::vector<Point> sq;
            for (const auto& p : pts) sq.push_back(to_square_space(shape, p));
            CHECK(testing::edge_set(build_graph(pts, shape)) == testing::edge_set(build_graph(sq, unit)));
        }
    }
}

TEST_CASE("construction is deterministic across worker counts") {
    const ShapeSpec shape(4.0, 1.0);
    const auto pts = sample_points(3, shape, {20, 0.0});
    const auto g1 = build_graph(pts, shape);
    setenv("PARADEL_THREADS", "3", 1);
    const auto g2 = build_graph(pts, shape);
    unsetenv("PARADEL_THREADS");
    REQUIRE(g1.edges.size() == g2.edges.size());
    for (std::size_t m = 0; m < g1.edges.size(); ++m) {
        CHECK(g1.edges[m].i == g2.edges[m].i);
        CHECK(g1.edges[m].j == g2.edges[m].j);
        CHECK(g1.edges[m].witness.side == g2.edges[m].witness.side);
    }
    CHECK(g1.triangles.size() == g2.triangles.size());
}

TEST_CASE("structure checks") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ShapeSpec shape = testing::sample_shapes()[seed % 5];
        const auto g = build_graph(sample_points(seed, shape, {static_cast<std::size_t>(2 + seed), 0.0}), shape);
        const auto r = check_structure(g);
        CHECK(r.ok());
        if (!r.ok())
            for (const auto& p : r.problems) MESSAGE(p);
    }
    CHECK(segments_properly_cross({0, 0}, {1, 1}, {0, 1}, {1, 0}));
    CHECK_FALSE(segments_properly_cross({0, 0}, {1, 1}, {1, 1}, {2, 0}));
    CHECK_FALSE(segments_properly_cross({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}

TEST_CASE("grid oracle") {
    const ShapeSpec shape(2.0, 1.0);
    const auto two = grid_voronoi_oracle({{0, 0}, {0.7, 0.2}}, shape, 128);
    REQUIRE(two.edges.size() == 1);
    CHECK(two.edges[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK_THROWS_AS(grid_voronoi_oracle({{0, 0}, {1, 1}}, shape, 32), DomainError);

    // Near-collinear cluster: regions tile the window, so the adjacency graph is connected.
    std::vector<Point> line;
    for (int i = 0; i < 8; ++i) line.push_back({0.1 * i, 0.013 * i * i});
    const auto o = grid_voronoi_oracle(line, shape, 256);
    std::vector<int> comp(line.size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
    for (int pass = 0; pass < 10; ++pass)
        for (const auto& [a, b] : o.edges) comp[a] = comp[b] = std::min(comp[a], comp[b]);
    for (int c : comp) CHECK(c == 0);

    int agree = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto pts = sample_points(seed, shape, {8, 20.0 / 1024});
        const auto ref = grid_voronoi_oracle(pts, shape, 1024);
        CHECK(ref.contacts.size() == ref.edges.size());
        const auto built = testing::edge_set(build_graph(pts, shape));
        if (built == std::set<std::pair<std::size_t, std::size_t>>(ref.edges.begin(), ref.edges.end())) ++agree;
    }
    CHECK(agree == 20);
}
