#include "paradel/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "parallel.h"

namespace paradel {

DistanceTable::DistanceTable(const std::vector<Point>& points,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : n_(points.size()),
      dist_(n_ * n_, std::numeric_limits<double>::infinity()),
      pred_(n_ * n_, npos) {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n_);
    for (auto [i, j] : edges) {
        const double w = distance(points[i], points[j]);
        adj[i].emplace_back(j, w);
        adj[j].emplace_back(i, w);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());

    detail::parallel_for(n_, [&](std::size_t s) {
        double* dist = &dist_[s * n_];
        std::size_t* pred = &pred_[s * n_];
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[s] = 0.0;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) continue;
            for (auto [v, w] : adj[u]) {
                if (d + w < dist[v]) {
                    dist[v] = d + w;
                    pred[v] = u;
                    heap.emplace(dist[v], v);
                }
            }
        }
    });
    // Runs from opposite ends can differ in the last bit.
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double d = std::min(dist_[i * n_ + j], dist_[j * n_ + i]);
            dist_[i * n_ + j] = dist_[j * n_ + i] = d;
        }
}

bool DistanceTable::reachable(std::size_t i, std::size_t j) const {
    return std::isfinite(at(i, j));
}

std::vector<std::size_t> DistanceTable::path(std::size_t i, std::size_t j) const {
    if (!reachable(i, j)) return {};
    std::vector<std::size_t> out{j};
    for (std::size_t v = j; v != i;) {
        v = pred_[i * n_ + v];
        out.push_back(v);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

template <class Edges>
std::vector<std::pair<std::size_t, std::size_t>> endpoint_pairs(const Edges& edges) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.emplace_back(e.i, e.j);
    return out;
}

}  // namespace

DistanceTable shortest_path_table(const DelaunayGraph& g) {
    return DistanceTable(g.points, endpoint_pairs(g.edges));
}

DistanceTable shortest_path_table(const Triangulation& t) {
    return DistanceTable(t.points, endpoint_pairs(t.edges));
}

RatioReport spanning_ratio(const DelaunayGraph& g) {
    const auto table = shortest_path_table(g);
    const std::size_t n = g.points.size();
    RatioReport report;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!table.reachable(i, j)) throw DisconnectedGraphError(i, j);
            PairRatio pr;
            pr.i = i;
            pr.j = j;
            pr.d_graph = table.at(i, j);
            pr.d_euclid = distance(g.points[i], g.points[j]);
            pr.ratio = pr.d_graph / pr.d_euclid;
            pr.scenario = classify_scenario(g.shape, g.points[i], g.points[j]).frame.scenario;
            pr.per_pair_bound = per_pair_bound(g.shape, g.points[i], g.points[j]);
            if (first || pr.ratio > report.max_ratio) {
                report.max_ratio = pr.ratio;
                report.argmax_pair = {i, j};
                first = false;
            }
            report.per_pair.push_back(pr);
        }
    return report;
}

double bound_h(const ShapeSpec& shape) {
    const double A = shape.aspect();
    const double c = std::cos(shape.angle());
    const double root = std::sqrt(1 + A * A + 2 * A * c);
    return std::sqrt(2.0) * std::sqrt(1 + A * A + 2 * A * c + (A + c) * root) /
           std::sin(shape.angle());
}

double per_pair_bound(const ShapeSpec& shape, Point a, Point b) {
    const auto pf = classify_scenario(shape, a, b);
    const double A = shape.aspect();
    const double abs_c = std::abs(std::cos(pf.frame.theta));
    const double x = pf.delta.xh, y = pf.delta.yh;
    if (pf.frame.long_side_vertical())
        return (A + std::sqrt(1 + A * A + 2 * A * abs_c)) * x + y;
    return (1 + std::sqrt(1 + 1 / (A * A) + 2 * abs_c / A)) * x + A * y;
}

namespace {

double default_theta(const ShapeSpec& shape) { return std::numbers::pi - shape.angle(); }

// K + m r over the hat norm of (1, r); f23 has m = 1, f14 is scaled by 1/A.
struct RatioFamily {
    double K;
    double m;
    double scale;
    double c;
    double s;

    double at(double r) const { return scale * (K + m * r) / std::sqrt(1 + r * r + 2 * r * c); }
    double argmax() const { return (m - K * c) / (K - m * c); }
};

RatioFamily family23(const ShapeSpec& shape, double theta) {
    const double A = shape.aspect(), c = std::cos(theta);
    const double D = 1 + A * A + 2 * A * std::abs(c);
    return {A + std::sqrt(D), 1.0, 1.0, c, std::sin(theta)};
}

RatioFamily family14(const ShapeSpec& shape, double theta) {
    const double A = shape.aspect(), c = std::cos(theta);
    const double D = 1 + A * A + 2 * A * std::abs(c);
    return {A + std::sqrt(D), A * A, 1.0 / A, c, std::sin(theta)};
}

}  // namespace

double f23(const ShapeSpec& shape, double r) { return f23(shape, r, default_theta(shape)); }
double f23(const ShapeSpec& shape, double r, double theta) {
    if (r < 0) throw DomainError("f23: r must be nonnegative");
    return family23(shape, theta).at(r);
}
double f14(const ShapeSpec& shape, double r) { return f14(shape, r, default_theta(shape)); }
double f14(const ShapeSpec& shape, double r, double theta) {
    if (r < 0) throw DomainError("f14: r must be nonnegative");
    return family14(shape, theta).at(r);
}

double f23_argmax(const ShapeSpec& shape, double theta) { return family23(shape, theta).argmax(); }
double f14_argmax(const ShapeSpec& shape, double theta) { return family14(shape, theta).argmax(); }

double max_span(const ShapeSpec& shape, double theta) {
    const double A = shape.aspect(), c = std::cos(theta);
    const double D = std::sqrt(1 + A * A + 2 * A * std::abs(c));
    return std::sqrt(2.0) * std::sqrt(1 + A * A + A * (std::abs(c) - c) + (A - c) * D) /
           std::sin(theta);
}

double candidate_max(const ShapeSpec& shape, double theta) {
    const double A = shape.aspect(), c = std::cos(theta);
    const double D = std::sqrt(1 + A * A + 2 * A * std::abs(c));
    const double inner = (1 + A * A) * (1 + A * A) + 2 * A * (std::abs(c) - A * A * c) +
                         2 * A * (1 - A * c) * D;
    return std::sqrt(inner) / (A * std::sin(theta));
}

bool BoundCandidates::dominance_holds(double aspect, double tol) const {
    return f23_star >= aspect - tol && f23_star >= f14_star - tol &&
           f23_at_zero >= f14_at_zero - tol;
}

BoundCandidates bound_candidates(const ShapeSpec& shape) {
    BoundCandidates bc;
    bc.theta = default_theta(shape);
    bc.f23_at_zero = f23(shape, 0.0, bc.theta);
    bc.f23_limit = 1.0;
    bc.f23_argmax = f23_argmax(shape, bc.theta);
    bc.f23_star = max_span(shape, bc.theta);
    bc.f14_at_zero = f14(shape, 0.0, bc.theta);
    bc.f14_limit = shape.aspect();
    bc.f14_argmax = f14_argmax(shape, bc.theta);
    bc.f14_star = candidate_max(shape, bc.theta);
    bc.global = std::max({bc.f23_at_zero, bc.f23_limit, bc.f23_star, bc.f14_at_zero, bc.f14_limit,
                          bc.f14_star});
    return bc;
}

}  // namespace paradel
