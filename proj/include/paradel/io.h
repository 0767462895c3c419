#pragma once

// Point readers, JSON/CSV writers and SVG rendering.
//
// Every real number is written with 17 significant digits; NaN and
// infinities become JSON null.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "paradel/analysis.h"
#include "paradel/construction.h"
#include "paradel/lemmas.h"

namespace paradel {

/// Insertion-ordered JSON value.
using Json = nlohmann::ordered_json;

struct PointInput {
    std::vector<Point> points;
    std::optional<ShapeSpec> shape;  ///< present when the input carried one
};

/// Accepts CSV (two columns, optional header line), a JSON array of [x, y]
/// pairs, or a JSON object with "points" and optionally "shape" {A, theta0}.
/// Throws InputFormatError.
PointInput parse_points(std::string_view text);

/// A graph document as written by graph_to_json. Witnesses are optional.
DelaunayGraph graph_from_json(const Json& doc);

/// Serializes with %.17g numbers and no insignificant whitespace.
std::string dump_json(const Json& value);

Json shape_to_json(const ShapeSpec& shape);
Json points_to_json(const std::vector<Point>& points);
/// {shape, points, edges, triangles, witnesses}; witnesses run parallel to edges.
Json graph_to_json(const DelaunayGraph& g);
Json ratio_to_json(const RatioReport& r);
Json candidates_to_json(const BoundCandidates& bc);
Json lemma_row_to_json(const std::string& instance, const LemmaRow& row);

/// "x,y" header followed by one line per point.
std::string points_to_csv(const std::vector<Point>& points);

std::string format_real(double v);

struct SvgOptions {
    std::optional<std::pair<std::size_t, std::size_t>> segment;
    bool witnesses = false;
    std::optional<double> ratio;
    std::optional<double> bound;
};

/// Points, edges, the optional segment and witness parallelograms in
/// original coordinates (y axis pointing up).
std::string render_svg(const DelaunayGraph& g, const SvgOptions& options);

}  // namespace paradel
