#include "paradel/sampling.h"

#include <algorithm>
#include <limits>
#include <random>

#include "paradel/construction.h"

namespace paradel {

namespace {

bool well_separated(const std::vector<Point>& sq, double fraction) {
    double umin = std::numeric_limits<double>::infinity(), umax = -umin, vmin = umin, vmax = -umin;
    for (const auto& q : sq) {
        umin = std::min(umin, q.x);
        umax = std::max(umax, q.x);
        vmin = std::min(vmin, q.y);
        vmax = std::max(vmax, q.y);
    }
    const double need = fraction * std::max(umax - umin, vmax - vmin);
    for (std::size_t i = 0; i < sq.size(); ++i)
        for (std::size_t j = i + 1; j < sq.size(); ++j) {
            const double d = std::max(std::abs(sq[i].x - sq[j].x), std::abs(sq[i].y - sq[j].y));
            if (d < need) return false;
        }
    return true;
}

}  // namespace

std::vector<Point> sample_points(std::uint64_t seed, const ShapeSpec& shape,
                                 const SampleOptions& options) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Point> pts, sq;
        int failures = 0;
        while (pts.size() < options.n && failures < 1000) {
            const Point p{unit(rng), unit(rng)};
            sq.push_back(to_square_space(shape, p));
            if (options.min_separation > 0 && !well_separated(sq, options.min_separation)) {
                sq.pop_back();
                ++failures;
                continue;
            }
            pts.push_back(p);
        }
        if (pts.size() < options.n) continue;
        if (options.min_separation > 0 && !well_separated(sq, options.min_separation)) continue;
        if (check_general_position(pts, shape).ok) return pts;
    }
    throw DomainError("sample_points: could not draw a point set meeting the constraints");
}

}  // namespace paradel
