#include "paradel/cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "paradel/analysis.h"
#include "paradel/construction.h"
#include "paradel/io.h"
#include "paradel/lemmas.h"
#include "paradel/lowerbound.h"
#include "paradel/sampling.h"

namespace paradel::cli {

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct VerificationFailure : Error {
    using Error::Error;
};

struct Options {
    std::optional<double> aspect;
    std::optional<double> angle;
    std::string input = "-";
    std::string output = "-";
    std::uint64_t seed = 0;
    int resolution = 1024;
    int n = 200;
    double alpha = 1.0;
    std::optional<double> beta;
    double epsilon = 1e-6;
    std::string format = "json";
    std::size_t random = 0;
    std::size_t n_max = 0;
    double separation_cells = 10.0;
    std::vector<std::size_t> pair;
    bool witnesses = false;
};

class Session {
public:
    Session(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    std::string read_input(const std::string& path) {
        std::ostringstream buf;
        if (path == "-") {
            buf << in_.rdbuf();
        } else {
            std::ifstream f(path);
            if (!f) throw IoError("cannot open input file: " + path);
            buf << f.rdbuf();
        }
        return buf.str();
    }

    void write_output(const std::string& path, const std::string& text) {
        if (path == "-") {
            out_ << text;
            out_.flush();
            return;
        }
        std::ofstream f(path);
        if (!f) throw IoError("cannot open output file: " + path);
        f << text;
    }

    std::ostream& err() { return err_; }

private:
    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
};

std::optional<ShapeSpec> flag_shape(const Options& o) {
    if (o.aspect.has_value() != o.angle.has_value())
        throw UsageError("--aspect and --angle must be given together");
    if (!o.aspect) return std::nullopt;
    return ShapeSpec(*o.aspect, *o.angle);
}

ShapeSpec require_shape(const Options& o) {
    auto s = flag_shape(o);
    if (!s) throw UsageError("--aspect and --angle are required");
    return *s;
}

ShapeSpec resolve_shape(const Options& o, const std::optional<ShapeSpec>& from_input) {
    if (auto s = flag_shape(o)) return *s;
    if (from_input) return *from_input;
    throw UsageError("no shape: pass --aspect and --angle or supply a shape in the input");
}

Json parse_document_or_null(const std::string& text) {
    const auto b = text.find_first_not_of(" \t\r\n");
    if (b == std::string::npos || text[b] != '{') return nullptr;
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputFormatError(std::string("malformed JSON: ") + e.what());
    }
}

// A graph document when the input carries edges, otherwise a freshly built graph.
DelaunayGraph load_graph(Session& s, const Options& o) {
    const std::string text = s.read_input(o.input);
    const Json doc = parse_document_or_null(text);
    if (doc.is_object() && doc.contains("edges")) {
        DelaunayGraph g = graph_from_json(doc);
        if (auto shape = flag_shape(o)) g.shape = *shape;
        return g;
    }
    const PointInput in = parse_points(text);
    return build_graph(in.points, resolve_shape(o, in.shape));
}

DelaunayGraph load_points_and_build(Session& s, const Options& o) {
    const PointInput in = parse_points(s.read_input(o.input));
    return build_graph(in.points, resolve_shape(o, in.shape));
}

void cmd_bound(Session& s, const Options& o) {
    const ShapeSpec shape = require_shape(o);
    const double h = bound_h(shape);
    Json doc{{"A", shape.aspect()},
             {"theta0", shape.angle()},
             {"bound", h},
             {"candidates", candidates_to_json(bound_candidates(shape))}};
    s.write_output(o.output, format_real(h) + "\n" + dump_json(doc) + "\n");
}

void cmd_build(Session& s, const Options& o) {
    const DelaunayGraph g = load_points_and_build(s, o);
    s.write_output(o.output, dump_json(graph_to_json(g)) + "\n");
}

void cmd_ratio(Session& s, const Options& o) {
    const DelaunayGraph g = load_graph(s, o);
    s.write_output(o.output, dump_json(ratio_to_json(spanning_ratio(g))) + "\n");
}

void cmd_worst_case(Session& s, const Options& o) {
    WorstCaseParams p;
    p.shape = require_shape(o);
    p.n = o.n;
    p.alpha = o.alpha;
    p.beta = o.beta;
    p.epsilon = o.epsilon;
    p.seed = o.seed;
    const auto pts = generate_worst_case(p);
    if (o.format == "csv") {
        s.write_output(o.output, points_to_csv(pts));
        return;
    }
    Json doc{{"shape", shape_to_json(p.shape)},
             {"params", Json{{"n", p.n},
                             {"alpha", p.alpha},
                             {"beta", p.resolved_beta()},
                             {"epsilon", p.epsilon},
                             {"seed", p.seed}}},
             {"pair", Json::array({0, p.n / 2})},
             {"predicted_ratio", predicted_ratio(p.shape, p.alpha, p.resolved_beta())},
             {"points", points_to_json(pts)}};
    s.write_output(o.output, dump_json(doc) + "\n");
}

void cmd_verify_lemmas(Session& s, const Options& o) {
    std::vector<std::pair<std::string, DelaunayGraph>> instances;
    if (o.random > 0) {
        const ShapeSpec shape = require_shape(o);
        const std::size_t n_max = o.n_max == 0 ? 25 : o.n_max;
        if (n_max < 4) throw UsageError("--n-max must be at least 4");
        for (std::size_t i = 0; i < o.random; ++i) {
            const std::uint64_t seed = o.seed + i;
            const std::size_t n = 4 + i % (n_max - 3);
            instances.emplace_back("seed-" + std::to_string(seed),
                                   build_graph(sample_points(seed, shape, {n, 0.0}), shape));
        }
    } else {
        instances.emplace_back(o.input == "-" ? "stdin" : o.input, load_points_and_build(s, o));
    }
    std::string text;
    std::size_t rows = 0, violations = 0, pairs = 0;
    for (const auto& [id, g] : instances) {
        const LemmaReport report = verify_instance(g, id);
        for (const auto& row : report.rows) text += dump_json(lemma_row_to_json(id, row)) + "\n";
        rows += report.rows.size();
        violations += report.violations();
        pairs += report.pairs_checked;
    }
    s.write_output(o.output, text);
    s.err() << "verify-lemmas: " << instances.size() << " instance(s), " << pairs << " pair(s), "
            << rows << " check(s), " << violations << " violation(s)\n";
    if (violations > 0) throw VerificationFailure("lemma inequalities violated");
}

void cmd_oracle_check(Session& s, const Options& o) {
    if (o.resolution < 64) throw UsageError("--resolution must be at least 64");
    std::vector<std::pair<std::string, std::pair<std::vector<Point>, ShapeSpec>>> instances;
    if (o.random > 0) {
        const ShapeSpec shape = require_shape(o);
        const std::size_t n_max = o.n_max == 0 ? 10 : o.n_max;
        if (n_max < 2) throw UsageError("--n-max must be at least 2");
        // Separation in cells of a window twice the bounding-square side.
        const double fraction = 2.0 * o.separation_cells / o.resolution;
        for (std::size_t i = 0; i < o.random; ++i) {
            const std::uint64_t seed = o.seed + i;
            const std::size_t n = 2 + i % (n_max - 1);
            instances.push_back({"seed-" + std::to_string(seed),
                                 {sample_points(seed, shape, {n, fraction}), shape}});
        }
    } else {
        const PointInput in = parse_points(s.read_input(o.input));
        instances.push_back({o.input == "-" ? "stdin" : o.input, {in.points, resolve_shape(o, in.shape)}});
    }
    std::size_t matches = 0;
    Json mismatches = Json::array();
    for (const auto& [id, inst] : instances) {
        const auto& [pts, shape] = inst;
        const DelaunayGraph g = build_graph(pts, shape);
        const OracleResult oracle = grid_voronoi_oracle(pts, shape, o.resolution);
        std::set<std::pair<std::size_t, std::size_t>> built, raster(oracle.edges.begin(), oracle.edges.end());
        for (const auto& e : g.edges) built.insert({e.i, e.j});
        if (built == raster) {
            ++matches;
            continue;
        }
        // Contact length of each disputed pair at eight times the resolution.
        const OracleResult fine = grid_voronoi_oracle(pts, shape, 8 * o.resolution);
        auto feature_cells = [&](std::pair<std::size_t, std::size_t> e) {
            for (std::size_t m = 0; m < fine.edges.size(); ++m)
                if (fine.edges[m] == e) return static_cast<double>(fine.contacts[m]) / 8.0;
            return 0.0;
        };
        Json diff{{"instance", id}, {"graph_only", Json::array()}, {"oracle_only", Json::array()}};
        double largest = 0.0;
        for (const auto& e : built)
            if (!raster.count(e)) {
                const double f = feature_cells(e);
                largest = std::max(largest, f);
                diff["graph_only"].push_back(Json{{"edge", Json::array({e.first, e.second})}, {"feature_cells", f}});
            }
        for (const auto& e : raster)
            if (!built.count(e)) {
                const double f = feature_cells(e);
                largest = std::max(largest, f);
                diff["oracle_only"].push_back(Json{{"edge", Json::array({e.first, e.second})}, {"feature_cells", f}});
            }
        diff["explained"] = largest < 3.0;
        mismatches.push_back(std::move(diff));
    }
    Json doc{{"instances", instances.size()},
             {"matches", matches},
             {"agreement_percent", 100.0 * static_cast<double>(matches) / static_cast<double>(instances.size())},
             {"resolution", o.resolution},
             {"mismatches", std::move(mismatches)}};
    s.write_output(o.output, dump_json(doc) + "\n");
}

void cmd_export_svg(Session& s, const Options& o) {
    const DelaunayGraph g = load_graph(s, o);
    SvgOptions svg;
    svg.witnesses = o.witnesses;
    svg.bound = bound_h(g.shape);
    if (g.points.size() >= 2) {
        try {
            const RatioReport r = spanning_ratio(g);
            svg.ratio = r.max_ratio;
            svg.segment = r.argmax_pair;
        } catch (const DisconnectedGraphError&) {
        }
    }
    if (!o.pair.empty()) {
        if (o.pair.size() != 2 || o.pair[0] >= g.points.size() || o.pair[1] >= g.points.size() ||
            o.pair[0] == o.pair[1])
            throw UsageError("--pair needs two distinct point indices");
        svg.segment = std::pair{o.pair[0], o.pair[1]};
    }
    s.write_output(o.output, render_svg(g, svg));
}

void add_shape(CLI::App* app, Options& o) {
    app->add_option("--aspect", o.aspect, "aspect ratio A >= 1");
    app->add_option("--angle", o.angle, "angle theta0 in radians, in (0, pi/2]");
}

void add_io(CLI::App* app, Options& o) {
    app->add_option("-i,--input", o.input, "input file, '-' for stdin");
    app->add_option("-o,--output", o.output, "output file, '-' for stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Parallelogram Delaunay graphs: construction, spanning ratios and bound checks"};
    app.require_subcommand(1);

    auto* bound = app.add_subcommand("bound", "print the worst-case spanning ratio and its candidates");
    add_shape(bound, o);
    bound->add_option("-o,--output", o.output, "output file, '-' for stdout");

    auto* build = app.add_subcommand("build", "build the graph of a point set");
    add_shape(build, o);
    add_io(build, o);

    auto* ratio = app.add_subcommand("ratio", "measure spanning ratios of a graph or point set");
    add_shape(ratio, o);
    add_io(ratio, o);

    auto* worst = app.add_subcommand("worst-case", "generate a two-column worst-case point set");
    add_shape(worst, o);
    worst->add_option("-o,--output", o.output, "output file, '-' for stdout");
    worst->add_option("--n", o.n, "total number of points (even, >= 4)");
    worst->add_option("--alpha", o.alpha, "horizontal extent in hat units");
    worst->add_option("--beta", o.beta, "vertical offset of b; defaults to the maximizing ratio");
    worst->add_option("--epsilon", o.epsilon, "horizontal perturbation magnitude");
    worst->add_option("--seed", o.seed, "jitter seed");
    worst->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* lemmas = app.add_subcommand("verify-lemmas", "check the lemma inequalities on instances");
    add_shape(lemmas, o);
    add_io(lemmas, o);
    lemmas->add_option("--random", o.random, "number of seeded random instances instead of input");
    lemmas->add_option("--n-max", o.n_max, "largest random instance size (default 25)");
    lemmas->add_option("--seed", o.seed, "first seed of the random instances");

    auto* oracle = app.add_subcommand("oracle-check", "compare the graph with the raster Voronoi oracle");
    add_shape(oracle, o);
    add_io(oracle, o);
    oracle->add_option("--resolution", o.resolution, "raster cells per side");
    oracle->add_option("--random", o.random, "number of seeded random instances instead of input");
    oracle->add_option("--n-max", o.n_max, "largest random instance size (default 10)");
    oracle->add_option("--seed", o.seed, "first seed of the random instances");
    oracle->add_option("--min-separation-cells", o.separation_cells,
                       "minimum square-space separation of random points, in cells");

    auto* svg = app.add_subcommand("export-svg", "render a graph as SVG");
    add_shape(svg, o);
    add_io(svg, o);
    svg->add_option("--pair", o.pair, "segment endpoints to highlight (two indices)")->expected(2);
    svg->add_flag("--witnesses", o.witnesses, "draw one witness parallelogram per edge");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("paradel");

    Session session(in, out, err);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (bound->parsed()) cmd_bound(session, o);
        else if (build->parsed()) cmd_build(session, o);
        else if (ratio->parsed()) cmd_ratio(session, o);
        else if (worst->parsed()) cmd_worst_case(session, o);
        else if (lemmas->parsed()) cmd_verify_lemmas(session, o);
        else if (oracle->parsed()) cmd_oracle_check(session, o);
        else if (svg->parsed()) cmd_export_svg(session, o);
        return kOk;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InputFormatError& e) {
        err << "error: " << e.what() << "\n";
        return kInputFormat;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kInputFormat;
    } catch (const GeneralPositionError& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& v : e.report.violations) err << "  " << to_string(v.kind) << ": " << v.description << "\n";
        return kGeneralPosition;
    } catch (const DisconnectedGraphError& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailure;
    } catch (const VerificationFailure& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputFormat;
    }
}

}  // namespace paradel::cli
