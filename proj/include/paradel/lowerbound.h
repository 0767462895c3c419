#pragma once

// Two-column point families whose spanning ratio approaches h(A, t0).

#include <cstdint>
#include <optional>
#include <vector>

#include "paradel/geometry.h"

namespace paradel {

struct WorstCaseParams {
    ShapeSpec shape{1.0, 1.5707963267948966};
    int n = 200;                 ///< even, >= 4; n/2 points per column
    double alpha = 1.0;          ///< > 0
    std::optional<double> beta;  ///< >= 0; defaults to alpha * r*
    double epsilon = 1e-6;       ///< 0 < epsilon <= 1e-3 * alpha
    std::uint64_t seed = 0;

    /// Throws DomainError for invalid values.
    void validate() const;
    double resolved_beta() const;
};

/// Points p_1..p_m followed by q_1..q_m (m = n/2); p_1 = a is index 0 and
/// q_1 = b is index m. Throws GeneralPositionError when ten jitter draws
/// all fail the general-position check.
std::vector<Point> generate_worst_case(const WorstCaseParams& params);

/// The analytic ratio of the path through the far end of the a-column.
double predicted_ratio(const ShapeSpec& shape, double alpha, double beta);

/// Length of that path.
double predicted_path_length(const ShapeSpec& shape, double alpha, double beta);

}  // namespace paradel
