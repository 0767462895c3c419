#include "paradel/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace paradel {

std::string format_real(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_json(const Json& v, std::string& out) {
    switch (v.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer: out += std::to_string(v.get<std::int64_t>()); break;
    case Json::value_t::number_unsigned: out += std::to_string(v.get<std::uint64_t>()); break;
    case Json::value_t::number_float: out += format_real(v.get<double>()); break;
    case Json::value_t::string: out += v.dump(); break;
    case Json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& e : v) {
            if (!first) out += ',';
            first = false;
            write_json(e, out);
        }
        out += ']';
        break;
    }
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& [key, e] : v.items()) {
            if (!first) out += ',';
            first = false;
            out += Json(key).dump();
            out += ':';
            write_json(e, out);
        }
        out += '}';
        break;
    }
    default: throw InputFormatError("dump_json: unsupported value type");
    }
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

PointInput parse_csv(std::string_view text) {
    PointInput in;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        std::optional<double> x, y;
        if (comma != std::string_view::npos && line.find(',', comma + 1) == std::string_view::npos) {
            x = parse_real(line.substr(0, comma));
            y = parse_real(line.substr(comma + 1));
        }
        if (!x || !y) {
            if (!seen_data && comma != std::string_view::npos) {
                seen_data = true;  // header
                continue;
            }
            throw InputFormatError("CSV line " + std::to_string(line_no) +
                                   ": expected two numeric columns");
        }
        seen_data = true;
        in.points.push_back({*x, *y});
    }
    return in;
}

double finite_number(const Json& v, const std::string& what) {
    if (!v.is_number()) throw InputFormatError(what + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputFormatError(what + " must be finite");
    return d;
}

std::vector<Point> points_from_json(const Json& arr) {
    if (!arr.is_array()) throw InputFormatError("points must be a JSON array");
    std::vector<Point> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& p = arr[i];
        if (!p.is_array() || p.size() != 2)
            throw InputFormatError("point " + std::to_string(i) + " must be an [x, y] pair");
        out.push_back({finite_number(p[0], "point coordinate"), finite_number(p[1], "point coordinate")});
    }
    return out;
}

ShapeSpec shape_from_json(const Json& s) {
    if (!s.is_object() || !s.contains("A") || !s.contains("theta0"))
        throw InputFormatError("shape must be an object with A and theta0");
    try {
        return ShapeSpec(finite_number(s["A"], "shape.A"), finite_number(s["theta0"], "shape.theta0"));
    } catch (const DomainError& e) {
        throw InputFormatError(std::string("invalid shape: ") + e.what());
    }
}

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        throw InputFormatError(std::string("malformed JSON: ") + e.what());
    }
}

WitnessSquare witness_from_json(const Json& w) {
    if (!w.is_object() || !w.contains("corner") || !w.contains("side") || !w["corner"].is_array() ||
        w["corner"].size() != 2)
        throw InputFormatError("witness must be {corner:[u,v], side:t}");
    return {{finite_number(w["corner"][0], "witness corner"), finite_number(w["corner"][1], "witness corner")},
            finite_number(w["side"], "witness side")};
}

std::size_t index_from_json(const Json& v, std::size_t n) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw InputFormatError("vertex index must be an integer");
    const auto i = v.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw InputFormatError("vertex index out of range");
    return static_cast<std::size_t>(i);
}

}  // namespace

std::string dump_json(const Json& value) {
    std::string out;
    write_json(value, out);
    return out;
}

PointInput parse_points(std::string_view text) {
    const std::string_view body = trim(text);
    if (body.empty()) throw InputFormatError("empty point input");
    if (body.front() != '[' && body.front() != '{') return parse_csv(body);
    const Json doc = parse_json_text(body);
    PointInput in;
    if (doc.is_array()) {
        in.points = points_from_json(doc);
        return in;
    }
    if (!doc.contains("points")) throw InputFormatError("JSON object input needs a points array");
    in.points = points_from_json(doc["points"]);
    if (doc.contains("shape")) in.shape = shape_from_json(doc["shape"]);
    return in;
}

DelaunayGraph graph_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("shape") || !doc.contains("points") || !doc.contains("edges"))
        throw InputFormatError("graph JSON needs shape, points and edges");
    DelaunayGraph g;
    g.shape = shape_from_json(doc["shape"]);
    g.points = points_from_json(doc["points"]);
    const std::size_t n = g.points.size();
    const auto& edges = doc["edges"];
    if (!edges.is_array()) throw InputFormatError("edges must be an array");
    const Json* witnesses = doc.contains("witnesses") ? &doc["witnesses"] : nullptr;
    if (witnesses && (!witnesses->is_array() || witnesses->size() != edges.size()))
        throw InputFormatError("witnesses must run parallel to edges");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& pair = edges[e];
        if (!pair.is_array() || pair.size() != 2) throw InputFormatError("edge must be [i, j]");
        std::size_t i = index_from_json(pair[0], n), j = index_from_json(pair[1], n);
        if (i == j) throw InputFormatError("self-loop edge");
        if (i > j) std::swap(i, j);
        g.edges.push_back({i, j, witnesses ? witness_from_json((*witnesses)[e]) : WitnessSquare{}});
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const GraphEdge& l, const GraphEdge& r) { return std::pair{l.i, l.j} < std::pair{r.i, r.j}; });
    if (doc.contains("triangles")) {
        for (const auto& t : doc["triangles"]) {
            if (!t.is_array() || t.size() != 3) throw InputFormatError("triangle must be [i, j, k]");
            std::array<std::size_t, 3> v{index_from_json(t[0], n), index_from_json(t[1], n),
                                         index_from_json(t[2], n)};
            std::sort(v.begin(), v.end());
            g.triangles.push_back({v[0], v[1], v[2], {}});
        }
    }
    return g;
}

Json shape_to_json(const ShapeSpec& shape) {
    return Json{{"A", shape.aspect()}, {"theta0", shape.angle()}};
}

Json points_to_json(const std::vector<Point>& points) {
    Json arr = Json::array();
    for (const auto& p : points) arr.push_back(Json::array({p.x, p.y}));
    return arr;
}

Json graph_to_json(const DelaunayGraph& g) {
    Json doc;
    doc["shape"] = shape_to_json(g.shape);
    doc["points"] = points_to_json(g.points);
    Json edges = Json::array(), tris = Json::array(), wits = Json::array();
    for (const auto& e : g.edges) {
        edges.push_back(Json::array({e.i, e.j}));
        wits.push_back(Json{{"corner", Json::array({e.witness.corner.x, e.witness.corner.y})},
                            {"side", e.witness.side}});
    }
    for (const auto& t : g.triangles) tris.push_back(Json::array({t.i, t.j, t.k}));
    doc["edges"] = std::move(edges);
    doc["triangles"] = std::move(tris);
    doc["witnesses"] = std::move(wits);
    return doc;
}

Json ratio_to_json(const RatioReport& r) {
    Json doc;
    doc["max_ratio"] = r.max_ratio;
    doc["argmax_pair"] = Json::array({r.argmax_pair.first, r.argmax_pair.second});
    Json pairs = Json::array();
    for (const auto& p : r.per_pair) {
        pairs.push_back(Json{{"pair", Json::array({p.i, p.j})},
                             {"d_graph", p.d_graph},
                             {"d_euclid", p.d_euclid},
                             {"ratio", p.ratio},
                             {"scenario", std::string(to_string(p.scenario))},
                             {"per_pair_bound", p.per_pair_bound}});
    }
    doc["per_pair"] = std::move(pairs);
    return doc;
}

Json candidates_to_json(const BoundCandidates& bc) {
    return Json{{"theta", bc.theta},
                {"f23_at_zero", bc.f23_at_zero},
                {"f23_limit", bc.f23_limit},
                {"f23_star", bc.f23_star},
                {"f23_argmax", bc.f23_argmax},
                {"f14_at_zero", bc.f14_at_zero},
                {"f14_limit", bc.f14_limit},
                {"f14_star", bc.f14_star},
                {"f14_argmax", bc.f14_argmax},
                {"global", bc.global}};
}

Json lemma_row_to_json(const std::string& instance, const LemmaRow& row) {
    Json j{{"instance", instance},
           {"pair", Json::array({row.a, row.b})},
           {"lemma", row.lemma},
           {"index", row.index},
           {"lhs", row.lhs},
           {"rhs", row.rhs},
           {"holds", row.holds},
           {"slack", row.slack()}};
    if (row.skipped) j["skipped"] = true;
    if (!row.note.empty()) j["note"] = row.note;
    return j;
}

std::string points_to_csv(const std::vector<Point>& points) {
    std::string out = "x,y\n";
    for (const auto& p : points) out += format_real(p.x) + "," + format_real(p.y) + "\n";
    return out;
}

std::string render_svg(const DelaunayGraph& g, const SvgOptions& options) {
    constexpr double kSize = 800.0, kMargin = 40.0, kLegend = 60.0;
    std::vector<std::array<Point, 4>> shapes;
    if (options.witnesses)
        for (const auto& e : g.edges) {
            const auto& w = e.witness;
            shapes.push_back({from_square_space(g.shape, w.corner),
                              from_square_space(g.shape, w.corner + Point{w.side, 0}),
                              from_square_space(g.shape, w.corner + Point{w.side, w.side}),
                              from_square_space(g.shape, w.corner + Point{0, w.side})});
        }

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    auto grow = [&](Point p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    };
    for (const auto& p : g.points) grow(p);
    for (const auto& s : shapes)
        for (const auto& p : s) grow(p);
    if (g.points.empty()) xmin = ymin = 0, xmax = ymax = 1;
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double scale = (kSize - 2 * kMargin) / span;
    auto sx = [&](double x) { return format_real(kMargin + (x - xmin) * scale); };
    auto sy = [&](double y) { return format_real(kLegend + kMargin + (ymax - y) * scale); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize
       << "\" height=\"" << kSize + kLegend << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<g id=\"witnesses\" fill=\"none\" stroke=\"#9bbbd4\" stroke-width=\"0.8\">\n";
    for (const auto& s : shapes) {
        os << "<polygon points=\"";
        for (const auto& p : s) os << sx(p.x) << ',' << sy(p.y) << ' ';
        os << "\"/>\n";
    }
    os << "</g>\n<g id=\"edges\" stroke=\"#333333\" stroke-width=\"1\">\n";
    for (const auto& e : g.edges) {
        const auto& p = g.points[e.i];
        const auto& q = g.points[e.j];
        os << "<line x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.y) << "\" x2=\"" << sx(q.x) << "\" y2=\""
           << sy(q.y) << "\"/>\n";
    }
    os << "</g>\n";
    if (options.segment) {
        const auto& p = g.points.at(options.segment->first);
        const auto& q = g.points.at(options.segment->second);
        os << "<line id=\"segment\" x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.y) << "\" x2=\"" << sx(q.x)
           << "\" y2=\"" << sy(q.y)
           << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    }
    os << "<g id=\"points\" fill=\"#1f4e79\">\n";
    for (const auto& p : g.points)
        os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"2.5\"/>\n";
    os << "</g>\n";

    os << "<text x=\"" << kMargin << "\" y=\"30\" font-family=\"monospace\" font-size=\"14\">A = "
       << format_real(g.shape.aspect()) << ", theta0 = " << format_real(g.shape.angle()) << " rad";
    if (options.ratio) os << ", ratio = " << format_real(*options.ratio);
    if (options.bound) os << ", bound = " << format_real(*options.bound);
    os << "</text>\n</svg>\n";
    return os.str();
}

}  // namespace paradel
