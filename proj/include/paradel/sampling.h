#pragma once

#include <cstdint>
#include <vector>

#include "paradel/geometry.h"

namespace paradel {

struct SampleOptions {
    std::size_t n = 10;
    /// Minimum pairwise Chebyshev separation in square space, as a fraction
    /// of the sample's square-space bounding-square side. Zero disables it.
    double min_separation = 0.0;
};

/// n points uniform in the unit box, redrawn point by point until the set
/// is in general position and meets the separation requirement.
/// Deterministic in (seed, shape, options). Throws DomainError when 1000
/// consecutive draws fail.
std::vector<Point> sample_points(std::uint64_t seed, const ShapeSpec& shape,
                                 const SampleOptions& options);

}  // namespace paradel
