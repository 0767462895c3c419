#include <doctest.h>

#include "paradel/analysis.h"
#include "paradel/sampling.h"
#include "support.h"

using namespace paradel;
using testing::kPi;

namespace {

// The rectangle special case written independently of bound_h.
double rectangle_bound(double A) { return std::sqrt(2.0) * std::sqrt(1 + A * A + A * std::sqrt(1 + A * A)); }

}  // namespace

TEST_CASE("bound_h closed form") {
    CHECK(std::abs(bound_h(ShapeSpec(1.0, kPi / 2)) - std::sqrt(4 + 2 * std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(bound_h(ShapeSpec(1.0, kPi / 2)) - 2.6131259297527532) < 1e-12);
    for (double A : {1.0, 1.5, 2.0, 3.0}) CHECK(std::abs(bound_h(ShapeSpec(A, kPi / 2)) - rectangle_bound(A)) < 1e-12);

    // Algebraic self-consistency at (2, pi/3).
    const double A = 2, t = kPi / 3, c = std::cos(t);
    const double v = bound_h(ShapeSpec(A, t));
    const double lhs = std::pow(v * std::sin(t) / std::sqrt(2.0), 2) - (1 + A * A + 2 * A * c);
    CHECK(std::abs(lhs - (A + c) * std::sqrt(1 + A * A + 2 * A * c)) < 1e-9);

    // High-precision reference values.
    CHECK(std::abs(bound_h(ShapeSpec(2.0, kPi / 3)) - 6.02536378490382968318) < 1e-12);
    CHECK(std::abs(bound_h(ShapeSpec(4.0, 1.0)) - 10.9290762381454846847) < 1e-11);
    CHECK(std::abs(bound_h(ShapeSpec(1.5, kPi / 2)) - 3.45084437684401872821) < 1e-12);
}

TEST_CASE("f23 and f14 values and limits") {
    const ShapeSpec sq(1.0, kPi / 2);
    CHECK(f23(sq, 0) == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-14));
    for (const auto& shape : testing::sample_shapes()) {
        CHECK(f23(shape, 1e9) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(f14(shape, 1e9) == doctest::Approx(shape.aspect()).epsilon(1e-6));
        CHECK(bound_h(shape) >= f23(shape, 0));
    }
    CHECK_THROWS_AS(f23(sq, -1), DomainError);
    CHECK_THROWS_AS(f14(sq, -0.5), DomainError);
}

TEST_CASE("bound candidates on the square") {
    const auto bc = bound_candidates(ShapeSpec(1.0, kPi / 2));
    CHECK(bc.f23_argmax == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-13));
    CHECK(bc.f23_star == doctest::Approx(std::sqrt(4 + 2 * std::sqrt(2.0))).epsilon(1e-13));
    CHECK(bc.f23_limit == 1.0);
    CHECK(bc.f14_limit == 1.0);
    CHECK(bc.theta == doctest::Approx(kPi / 2));
}

TEST_CASE("optimization consistency over the shape grid") {
    for (double A : {1.0, 1.25, 2.0, 4.0, 8.0})
        for (double t : {0.3, 0.7, 1.0, 1.3, kPi / 2}) {
            const ShapeSpec shape(A, t);
            CAPTURE(A);
            CAPTURE(t);
            const auto bc = bound_candidates(shape);
            const double theta = kPi - t;
            const double numeric = testing::grid_then_golden_max([&](double r) { return f23(shape, r, theta); }, 0, 1e3);
            CHECK(std::abs(numeric - max_span(shape, theta)) < 1e-9);
            CHECK(std::abs(bc.f23_star - max_span(shape, theta)) < 1e-12 * bc.f23_star);
            const double numeric14 = testing::grid_then_golden_max([&](double r) { return f14(shape, r, theta); }, 0, 1e3);
            CHECK(std::abs(numeric14 - std::max({candidate_max(shape, theta), f14(shape, 0, theta), A})) < 1e-9);
            CHECK(std::abs(bc.global - bound_h(shape)) < 1e-12 * bc.global);
            CHECK(bc.dominance_holds(A));
            const double tol = 1e-12 * bc.f23_star;
            CHECK(bc.f23_star >= A - tol);
            CHECK(bc.f23_star >= bc.f14_star - tol);
            CHECK(bc.f23_at_zero >= bc.f14_at_zero - tol);

            // Stationarity of f23 at r*.
            const double r = bc.f23_argmax, h = 1e-5 * (1 + r);
            const double d = (f23(shape, r + h, theta) - f23(shape, std::max(0.0, r - h), theta)) / (2 * h);
            CHECK(std::abs(d) <= 1e-6 * bc.f23_star);

            // The theta = t0 variants never exceed the global value.
            CHECK(max_span(shape, t) <= bc.global + 1e-12);
        }
}

TEST_CASE("per_pair_bound examples") {
    CHECK(per_pair_bound(ShapeSpec(1.0, kPi / 2), {0, 0}, {1, 0}) == doctest::Approx(1 + std::sqrt(2.0)));
    CHECK(per_pair_bound(ShapeSpec(2.0, kPi / 2), {0, 0}, {0, 1}) == doctest::Approx(1 + std::sqrt(1.25)));
    CHECK_THROWS_AS(per_pair_bound(ShapeSpec(2.0, 1.0), {1, 1}, {1, 1}), DegenerateInputError);
    // Dividing by the pair's length never exceeds the global bound.
    for (const auto& shape : testing::sample_shapes()) {
        const auto pts = testing::uniform_points(9, 60);
        for (std::size_t i = 1; i < pts.size(); ++i)
            CHECK(per_pair_bound(shape, pts[0], pts[i]) / distance(pts[0], pts[i]) <= bound_h(shape) + 1e-9);
    }
}

TEST_CASE("shortest paths") {
    const DistanceTable two({{0, 0}, {3, 4}}, {{0, 1}});
    CHECK(two.at(0, 1) == doctest::Approx(5.0));
    const DistanceTable path({{0, 0}, {1, 1}, {2, 0}}, {{0, 1}, {1, 2}});
    CHECK(path.at(0, 2) == doctest::Approx(2 * std::sqrt(2.0)));
    CHECK(path.path(0, 2) == std::vector<std::size_t>{0, 1, 2});
    const DistanceTable split({{0, 0}, {1, 0}, {5, 5}}, {{0, 1}});
    CHECK_FALSE(split.reachable(0, 2));
    CHECK(std::isinf(split.at(0, 2)));
    CHECK(split.path(0, 2).empty());

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ShapeSpec shape = testing::sample_shapes()[seed % 5];
        const auto g = build_graph(sample_points(seed, shape, {20, 0.0}), shape);
        const auto t = shortest_path_table(g);
        const std::size_t n = g.points.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(t.at(i, j) == t.at(j, i));
                CHECK(t.at(i, j) >= distance(g.points[i], g.points[j]) - 1e-12);
                for (std::size_t k = 0; k < n; ++k) CHECK(t.at(i, j) <= t.at(i, k) + t.at(k, j) + 1e-9);
            }
    }
}

TEST_CASE("spanning ratio") {
    const ShapeSpec sq(1.0, kPi / 2);
    const auto tri = build_graph({{0, 0}, {1, 0.1}, {0.5, 0.9}}, sq);
    CHECK(spanning_ratio(tri).max_ratio == doctest::Approx(1.0));
    CHECK(spanning_ratio(build_graph({{0, 0}, {0.3, 0.7}}, sq)).max_ratio == doctest::Approx(1.0));

    DelaunayGraph broken = tri;
    broken.edges.clear();
    CHECK_THROWS_AS(spanning_ratio(broken), DisconnectedGraphError);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ShapeSpec shape = testing::sample_shapes()[seed % 5];
        const auto g = build_graph(sample_points(seed, shape, {25, 0.0}), shape);
        const auto r = spanning_ratio(g);
        double mx = 0;
        for (const auto& p : r.per_pair) {
            CHECK(p.ratio >= 1 - 1e-12);
            CHECK(p.d_graph >= p.d_euclid - 1e-12);
            CHECK(p.d_graph <= p.per_pair_bound + 1e-9);
            mx = std::max(mx, p.ratio);
        }
        CHECK(r.max_ratio == mx);
        CHECK(r.max_ratio <= bound_h(shape) + 1e-9);
        CHECK(r.per_pair.size() == g.points.size() * (g.points.size() - 1) / 2);
    }
}
