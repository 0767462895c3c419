#include "paradel/lowerbound.h"

#include <cmath>
#include <random>

#include "paradel/analysis.h"
#include "paradel/construction.h"

namespace paradel {

void WorstCaseParams::validate() const {
    if (n < 4 || n % 2 != 0) throw DomainError("worst-case: n must be an even integer >= 4");
    if (!(alpha > 0) || !std::isfinite(alpha)) throw DomainError("worst-case: alpha must be > 0");
    if (beta && (!(*beta >= 0) || !std::isfinite(*beta)))
        throw DomainError("worst-case: beta must be >= 0");
    if (!(epsilon > 0) || epsilon > 1e-3 * alpha)
        throw DomainError("worst-case: epsilon must lie in (0, 1e-3 * alpha]");
}

double WorstCaseParams::resolved_beta() const {
    if (beta) return *beta;
    return alpha * f23_argmax(shape, std::numbers::pi - shape.angle());
}

std::vector<Point> generate_worst_case(const WorstCaseParams& params) {
    params.validate();
    const ScenarioFrame frame = make_frame(params.shape, Scenario::S2);
    const double A = params.shape.aspect();
    const double alpha = params.alpha, beta = params.resolved_beta();
    const std::size_t m = static_cast<std::size_t>(params.n / 2);

    // Column ends in hat coordinates.
    const HatCoords p_first{0, 0}, p_last{0, beta + alpha * A};
    const HatCoords q_first{alpha, beta}, q_last{alpha, -alpha * A};
    auto lerp = [&](HatCoords u, HatCoords v, std::size_t i) {
        const double t = static_cast<double>(i) / static_cast<double>(m - 1);
        return from_hat(frame, {u.xh + t * (v.xh - u.xh), u.yh + t * (v.yh - u.yh)});
    };

    const double step = params.epsilon / params.n;
    std::optional<GeneralPositionReport> last;
    for (int attempt = 0; attempt < 10; ++attempt) {
        std::mt19937_64 rng(params.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt));
        std::uniform_real_distribution<double> jitter(0.0, 0.25);
        std::vector<Point> pts;
        pts.reserve(2 * m);
        for (int column = 0; column < 2; ++column)
            for (std::size_t i = 0; i < m; ++i) {
                Point p = column == 0 ? lerp(p_first, p_last, i) : lerp(q_first, q_last, i);
                // Both columns drift right as they descend. The b-column carries an
                // extra half step so each diagonal rung keeps its full length.
                const std::size_t rank = column == 0 ? i : m - 1 - i;
                const double offset = column == 0 ? 0.0 : 0.5;
                p.x += step * (static_cast<double>(rank) + offset + jitter(rng));
                pts.push_back(p);
            }
        auto report = check_general_position(pts, params.shape);
        if (report.ok) return pts;
        last = std::move(report);
    }
    throw GeneralPositionError(std::move(*last));
}

double predicted_path_length(const ShapeSpec& shape, double alpha, double beta) {
    const double A = shape.aspect(), c = std::cos(shape.angle());
    return alpha * (A + std::sqrt(1 + A * A + 2 * A * c)) + beta;
}

double predicted_ratio(const ShapeSpec& shape, double alpha, double beta) {
    if (!(alpha > 0)) throw DomainError("predicted_ratio: alpha must be > 0");
    const double c = std::cos(shape.angle());
    return predicted_path_length(shape, alpha, beta) /
           std::sqrt(alpha * alpha + beta * beta - 2 * alpha * beta * c);
}

}  // namespace paradel
