#pragma once

// Triangle sequences crossing a segment and instance-level checks of the
// potential, inductive-point, monotone-path, crossing and descent lemmas.
//
// Conventions: hat coordinates are taken relative to a, so a sits at the
// origin. Path lengths are Euclidean; perimeter walks and E-side
// coordinates are in hat units.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "paradel/analysis.h"
#include "paradel/construction.h"
#include "paradel/geometry.h"

namespace paradel {

struct SequenceVertex {
    std::size_t index = 0;  ///< vertex of the augmented triangulation
    Point point;
    HatCoords hat;
};

/// Triangles T_1..T_k met by segment ab, ordered from a to b. Every vector
/// has k + 1 entries so that entry i belongs to T_i; entry 0 holds a in
/// highs/lows and placeholders elsewhere. highs[k] == lows[k] == b.
struct CrossingSequence {
    ScenarioFrame frame;
    std::size_t a = 0;
    std::size_t b = 0;
    bool swapped = false;  ///< the caller's pair was reversed to orient it
    HatCoords b_hat;
    std::vector<std::array<std::size_t, 3>> triangles;
    std::vector<SequenceVertex> highs;
    std::vector<SequenceVertex> lows;
    std::vector<HatRect> witnesses;
    std::vector<double> east_coords;  ///< hi.xh of each witness
    std::size_t k = 0;
};

/// Walks the augmented triangulation from a to b. Returns nullopt when (a, b)
/// is an edge. Throws ContractViolation when a vertex lies on the line ab
/// (within 1e-12 relative) or the walk leaves the triangulation.
std::optional<CrossingSequence> crossing_sequence(const Triangulation& tri, const ShapeSpec& shape,
                                                  std::size_t a, std::size_t b);

/// True when no original point other than a and b lies in the closed box P(a,b).
bool pair_box_empty(const Triangulation& tri, const CrossingSequence& seq);

struct PotentialCheck {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Requires 1 <= i <= k. `dist` must be built on the same triangulation.
PotentialCheck has_potential(const CrossingSequence& seq, const DistanceTable& dist, std::size_t i);

struct InductiveInfo {
    bool inductive = false;
    bool point_is_high = false;
    std::optional<std::size_t> point;  ///< triangulation index of the inductive point
};

/// Requires 1 <= i < k.
InductiveInfo inductive_info(const CrossingSequence& seq, std::size_t i);

/// One evaluated inequality. holds <=> lhs <= rhs + 1e-9.
struct LemmaRow {
    std::string lemma;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t index = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    bool skipped = false;
    std::string note;

    double slack() const { return rhs - lhs; }
};

inline constexpr double kLemmaTol = 1e-9;

LemmaRow check_lemma5(const CrossingSequence& seq, const DistanceTable& dist, std::size_t i);

/// Sequence positions of the maximal high and low paths ending at position j.
struct MaximalPaths {
    std::vector<std::size_t> high;
    std::vector<std::size_t> low;
};

MaximalPaths maximal_paths(const CrossingSequence& seq, std::size_t j);

/// High and low rows for the maximal paths ending at j. The left side is
/// the length of the path itself.
std::vector<LemmaRow> check_lemma7(const CrossingSequence& seq, std::size_t j);

/// Potential at T_1 and its propagation across non-inductive steps.
std::vector<LemmaRow> check_lemma4(const CrossingSequence& seq, const DistanceTable& dist);

/// Exactly one row: case 1, 2a, 2b, 2c or 2d.
std::vector<LemmaRow> check_crossing_lemma(const CrossingSequence& seq, const DistanceTable& dist);

/// Rows for the steps between the inductive point of T_i and the first
/// later vertex back inside the wedge at b. A skipped row when the
/// hypothesis does not hold at i.
std::vector<LemmaRow> check_lemma9(const CrossingSequence& seq, std::size_t i);

struct LemmaReport {
    std::string instance;
    std::vector<LemmaRow> rows;  ///< ordered by (pair, lemma, index)
    std::size_t pairs_checked = 0;
    std::size_t pairs_adjacent = 0;
    std::size_t pairs_box_nonempty = 0;
    std::size_t pairs_degenerate = 0;

    std::size_t violations() const;
};

/// Runs every applicable check over all pairs of original points whose box
/// P(a,b) is empty and which are not adjacent.
LemmaReport verify_instance(const DelaunayGraph& g, std::string instance);

}  // namespace paradel
