#include "paradel/lemmas.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace paradel {

namespace {

double hat_cross(HatCoords u, HatCoords v) { return u.xh * v.yh - u.yh * v.xh; }

double l1(HatCoords u) { return std::abs(u.xh) + std::abs(u.yh); }

// Sign of p relative to the line through the origin and b in hat coordinates.
int side_of_line(HatCoords b, HatCoords p) {
    const double c = hat_cross(b, p);
    if (std::abs(c) <= 1e-12 * l1(b) * l1(p)) return 0;
    return c > 0 ? 1 : -1;
}

HatRect witness_rect(const ShapeSpec& shape, const ScenarioFrame& frame, Point origin,
                     const WitnessSquare& w) {
    const std::array<Point, 4> corners{{{w.corner.x, w.corner.y},
                                        {w.corner.x + w.side, w.corner.y},
                                        {w.corner.x + w.side, w.corner.y + w.side},
                                        {w.corner.x, w.corner.y + w.side}}};
    HatRect r{frame, {}, {}};
    bool first = true;
    for (const auto& c : corners) {
        const HatCoords h = to_hat(frame, from_square_space(shape, c) - origin);
        if (first) {
            r.lo = r.hi = h;
            first = false;
            continue;
        }
        r.lo = {std::min(r.lo.xh, h.xh), std::min(r.lo.yh, h.yh)};
        r.hi = {std::max(r.hi.xh, h.xh), std::max(r.hi.yh, h.yh)};
    }
    return r;
}

LemmaRow make_row(const CrossingSequence& seq, std::string lemma, std::size_t index, double lhs,
                  double rhs) {
    LemmaRow row;
    row.lemma = std::move(lemma);
    row.a = seq.a;
    row.b = seq.b;
    row.index = index;
    row.lhs = lhs;
    row.rhs = rhs;
    row.holds = lhs <= rhs + kLemmaTol;
    return row;
}

LemmaRow skipped_row(const CrossingSequence& seq, std::string lemma, std::size_t index,
                     std::string note) {
    LemmaRow row = make_row(seq, std::move(lemma), index, 0.0, 0.0);
    row.skipped = true;
    row.note = std::move(note);
    return row;
}

// Coefficient of x_b in the crossing bound for slope ratio L.
double crossing_coefficient(double L, double theta) {
    return L + std::sqrt(1 + L * L + 2 * L * std::abs(std::cos(theta)));
}

}  // namespace

std::optional<CrossingSequence> crossing_sequence(const Triangulation& tri, const ShapeSpec& shape,
                                                  std::size_t a, std::size_t b) {
    if (a >= tri.n_input || b >= tri.n_input || a == b)
        throw DomainError("crossing_sequence: a and b must be distinct original points");
    const auto& P = tri.points;
    const PairFrame pf = classify_scenario(shape, P[a], P[b]);
    if (pf.swapped) std::swap(a, b);

    const auto key = std::pair{std::min(a, b), std::max(a, b)};
    const auto edge_it = std::lower_bound(
        tri.edges.begin(), tri.edges.end(), key,
        [](const GraphEdge& e, const std::pair<std::size_t, std::size_t>& k) {
            return std::pair{e.i, e.j} < k;
        });
    if (edge_it != tri.edges.end() && edge_it->i == key.first && edge_it->j == key.second)
        return std::nullopt;

    CrossingSequence seq;
    seq.frame = pf.frame;
    seq.a = a;
    seq.b = b;
    seq.swapped = pf.swapped;
    seq.b_hat = pf.delta;
    const HatCoords bh = seq.b_hat;

    auto vertex = [&](std::size_t v) {
        return SequenceVertex{v, P[v], to_hat(seq.frame, P[v] - P[a])};
    };
    auto side = [&](std::size_t v) {
        if (v == a || v == b) return 0;
        const int s = side_of_line(bh, vertex(v).hat);
        if (s == 0) {
            const HatCoords h = vertex(v).hat;
            if (h.xh * bh.xh + h.yh * bh.yh > 0)
                throw ContractViolation("crossing_sequence: vertex " + std::to_string(v) +
                                        " lies on the line through a and b");
        }
        return s;
    };

    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_edge;
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
        const auto& T = tri.triangles[t];
        by_edge[{T.i, T.j}].push_back(t);
        by_edge[{T.i, T.k}].push_back(t);
        by_edge[{T.j, T.k}].push_back(t);
    }

    seq.highs.push_back(vertex(a));
    seq.lows.push_back(vertex(a));
    seq.triangles.push_back({a, a, a});
    seq.witnesses.push_back(HatRect{seq.frame, {0, 0}, {0, 0}});
    seq.east_coords.push_back(0.0);

    // First triangle: the one at a whose opposite edge crosses the ray toward b.
    std::optional<std::size_t> current;
    std::size_t high = a, low = a;
    for (std::size_t t = 0; t < tri.triangles.size() && !current; ++t) {
        const auto& T = tri.triangles[t];
        std::array<std::size_t, 3> v{T.i, T.j, T.k};
        auto it = std::find(v.begin(), v.end(), a);
        if (it == v.end()) continue;
        std::array<std::size_t, 2> other{};
        std::size_t o = 0;
        for (auto x : v)
            if (x != a) other[o++] = x;
        const int s0 = side(other[0]), s1 = side(other[1]);
        if (s0 * s1 >= 0) continue;
        const std::size_t up = s0 > 0 ? other[0] : other[1];
        const std::size_t down = s0 > 0 ? other[1] : other[0];
        const HatCoords hu = vertex(up).hat, hd = vertex(down).hat;
        const HatCoords dir = hd - hu;
        const double t_ray = hat_cross(hu, dir) / hat_cross(bh, dir);
        if (t_ray > 0) {
            current = t;
            high = up;
            low = down;
        }
    }
    if (!current) throw ContractViolation("crossing_sequence: no triangle at a meets segment ab");

    auto record = [&](std::size_t t, std::size_t h, std::size_t l) {
        const auto& T = tri.triangles[t];
        seq.triangles.push_back({T.i, T.j, T.k});
        seq.highs.push_back(vertex(h));
        seq.lows.push_back(vertex(l));
        seq.witnesses.push_back(witness_rect(shape, seq.frame, P[a], T.witness));
        seq.east_coords.push_back(seq.witnesses.back().hi.xh);
    };

    record(*current, high, low);
    for (std::size_t guard = 0; guard <= tri.triangles.size(); ++guard) {
        const auto e = std::pair{std::min(high, low), std::max(high, low)};
        const auto& owners = by_edge.at(e);
        std::optional<std::size_t> next;
        for (auto t : owners)
            if (t != *current) next = t;
        if (!next) throw ContractViolation("crossing_sequence: walk left the triangulation");
        current = next;
        const auto& T = tri.triangles[*current];
        std::size_t w = T.i;
        for (auto x : {T.i, T.j, T.k})
            if (x != high && x != low) w = x;
        if (w == b) {
            record(*current, b, b);
            seq.k = seq.highs.size() - 1;
            return seq;
        }
        if (side(w) > 0)
            high = w;
        else
            low = w;
        record(*current, high, low);
    }
    throw ContractViolation("crossing_sequence: walk did not reach b");
}

bool pair_box_empty(const Triangulation& tri, const CrossingSequence& seq) {
    const Point origin = tri.points[seq.a];
    for (std::size_t v = 0; v < tri.n_input; ++v) {
        if (v == seq.a || v == seq.b) continue;
        const HatCoords h = to_hat(seq.frame, tri.points[v] - origin);
        if (h.xh >= 0 && h.xh <= seq.b_hat.xh && h.yh >= 0 && h.yh <= seq.b_hat.yh) return false;
    }
    return true;
}

PotentialCheck has_potential(const CrossingSequence& seq, const DistanceTable& dist, std::size_t i) {
    if (i < 1 || i > seq.k) throw DomainError("has_potential: index out of range");
    const auto& h = seq.highs[i];
    const auto& l = seq.lows[i];
    PotentialCheck out;
    out.lhs = dist.at(seq.a, h.index) + dist.at(seq.a, l.index) +
              clockwise_perimeter_distance(seq.witnesses[i], h.hat, l.hat);
    out.rhs = (2 + 2 * seq.frame.slope_ratio) * seq.east_coords[i];
    out.holds = out.lhs <= out.rhs + kLemmaTol;
    return out;
}

InductiveInfo inductive_info(const CrossingSequence& seq, std::size_t i) {
    if (i < 1 || i >= seq.k) throw DomainError("inductive_info: index out of range");
    const auto& h = seq.highs[i];
    const auto& l = seq.lows[i];
    InductiveInfo out;
    out.inductive = gentle_edge(seq.frame, h.hat, l.hat);
    if (out.inductive) {
        out.point_is_high = h.hat.xh > l.hat.xh;
        out.point = out.point_is_high ? h.index : l.index;
    }
    return out;
}

LemmaRow check_lemma5(const CrossingSequence& seq, const DistanceTable& dist, std::size_t i) {
    if (i < 1 || i >= seq.k) return skipped_row(seq, "lemma5", i, "index out of range");
    const auto info = inductive_info(seq, i);
    if (!info.inductive) return skipped_row(seq, "lemma5", i, "not inductive");
    if (!has_potential(seq, dist, i).holds) return skipped_row(seq, "lemma5", i, "no potential");
    const auto& c = info.point_is_high ? seq.highs[i] : seq.lows[i];
    if (!on_side(seq.witnesses[i], c.hat, RectSide::E))
        return skipped_row(seq, "lemma5", i, "inductive point not on E side");
    return make_row(seq, "lemma5", i, dist.at(seq.a, c.index),
                    (1 + seq.frame.slope_ratio) * c.hat.xh);
}

MaximalPaths maximal_paths(const CrossingSequence& seq, std::size_t j) {
    if (j < 1 || j > seq.k) throw DomainError("maximal_paths: index out of range");
    auto walk = [&](const std::vector<SequenceVertex>& chain) {
        auto eastern = [&](std::size_t i) {
            return on_side(seq.witnesses[i], chain[i].hat, RectSide::E);
        };
        std::size_t start = j;
        if (!eastern(j)) {
            start = j - 1;
            while (start > 0 && !eastern(start)) --start;
        }
        std::vector<std::size_t> out;
        for (std::size_t i = start; i <= j; ++i) out.push_back(i);
        return out;
    };
    return {walk(seq.highs), walk(seq.lows)};
}

std::vector<LemmaRow> check_lemma7(const CrossingSequence& seq, std::size_t j) {
    const auto paths = maximal_paths(seq, j);
    auto length = [&](const std::vector<SequenceVertex>& chain, const std::vector<std::size_t>& path) {
        double total = 0.0;
        for (std::size_t m = 0; m + 1 < path.size(); ++m) {
            const auto& u = chain[path[m]];
            const auto& v = chain[path[m + 1]];
            if (u.index != v.index) total += distance(u.point, v.point);
        }
        return total;
    };
    const auto& hi = seq.highs[paths.high.front()].hat;
    const auto& hj = seq.highs[j].hat;
    const auto& li = seq.lows[paths.low.front()].hat;
    const auto& lj = seq.lows[j].hat;
    return {make_row(seq, "lemma7-high", j, length(seq.highs, paths.high),
                     (hj.xh - hi.xh) + (hj.yh - hi.yh)),
            make_row(seq, "lemma7-low", j, length(seq.lows, paths.low),
                     (lj.xh - li.xh) + (li.yh - lj.yh))};
}

std::vector<LemmaRow> check_lemma4(const CrossingSequence& seq, const DistanceTable& dist) {
    std::vector<LemmaRow> rows;
    auto first = has_potential(seq, dist, 1);
    rows.push_back(make_row(seq, "lemma4", 1, first.lhs, first.rhs));
    bool carried = first.holds;
    for (std::size_t i = 1; i < seq.k && carried; ++i) {
        if (inductive_info(seq, i).inductive) break;
        const auto next = has_potential(seq, dist, i + 1);
        rows.push_back(make_row(seq, "lemma4", i + 1, next.lhs, next.rhs));
        carried = next.holds;
    }
    return rows;
}

std::vector<LemmaRow> check_crossing_lemma(const CrossingSequence& seq, const DistanceTable& dist) {
    const double L = seq.frame.slope_ratio;
    const double theta = seq.frame.theta;
    std::optional<std::size_t> first;
    for (std::size_t i = 1; i < seq.k && !first; ++i)
        if (inductive_info(seq, i).inductive) first = i;

    if (!first) {
        const double rhs = crossing_coefficient(L, theta) * seq.b_hat.xh + seq.b_hat.yh;
        return {make_row(seq, "crossing-1", seq.k, dist.at(seq.a, seq.b), rhs)};
    }
    const std::size_t j = *first;
    const auto info = inductive_info(seq, j);
    const auto& c = info.point_is_high ? seq.highs[j] : seq.lows[j];
    const double d = dist.at(seq.a, c.index);
    const double A = std::max(L, 1.0 / L);
    if (seq.frame.long_side_vertical()) {
        const double coef = crossing_coefficient(A, theta);
        if (info.point_is_high)
            return {make_row(seq, "crossing-2a", j, d + (c.hat.yh - seq.b_hat.yh), coef * c.hat.xh)};
        return {make_row(seq, "crossing-2b", j, d - c.hat.yh, coef * c.hat.xh)};
    }
    const double coef = 1 + std::sqrt(1 + 1 / (A * A) + 2 * std::abs(std::cos(theta)) / A);
    if (info.point_is_high)
        return {make_row(seq, "crossing-2c", j, d + A * (c.hat.yh - seq.b_hat.yh), coef * c.hat.xh)};
    return {make_row(seq, "crossing-2d", j, d - A * c.hat.yh, coef * c.hat.xh)};
}

std::vector<LemmaRow> check_lemma9(const CrossingSequence& seq, std::size_t i) {
    if (i <= 1 || i >= seq.k) return {skipped_row(seq, "lemma9", i, "index out of range")};
    const auto info = inductive_info(seq, i);
    if (!info.inductive) return {skipped_row(seq, "lemma9", i, "not inductive")};
    const double L = seq.frame.slope_ratio;
    const HatCoords b = seq.b_hat;
    const bool high = info.point_is_high;
    const auto& chain = high ? seq.highs : seq.lows;
    const HatCoords c = chain[i].hat;
    // Vertical offset from b, positive on the point's own side of b.
    auto rise = [&](HatCoords p) { return high ? p.yh - b.yh : b.yh - p.yh; };
    const double run = L * (b.xh - c.xh);
    if (!(run > 0 && run < rise(c))) return {skipped_row(seq, "lemma9", i, "hypothesis not met")};

    std::size_t j = i + 1;
    for (; j <= seq.k; ++j) {
        const HatCoords p = chain[j].hat;
        if (L * (b.xh - p.xh) >= rise(p) && rise(p) >= 0) break;
    }
    const std::string id = high ? "lemma9-high" : "lemma9-low";
    const RectSide from_side = high ? RectSide::N : RectSide::S;
    std::vector<LemmaRow> rows;
    for (std::size_t m = i; m < j && m < seq.k; ++m) {
        const auto& u = chain[m];
        const auto& v = chain[m + 1];
        if (u.index == v.index) continue;
        const HatRect& rect = seq.witnesses[m + 1];
        const bool ok = on_side(rect, u.hat, from_side) && on_side(rect, v.hat, RectSide::E);
        LemmaRow row = make_row(seq, id, m + 1, ok ? 0.0 : 1.0, 0.0);
        row.note = high ? "edge N->E" : "edge S->E";
        rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t LemmaReport::violations() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const LemmaRow& r) { return !r.skipped && !r.holds; }));
}

LemmaReport verify_instance(const DelaunayGraph& g, std::string instance) {
    LemmaReport report;
    report.instance = std::move(instance);
    const Triangulation& tri = g.augmented;
    const DistanceTable dist = shortest_path_table(tri);
    const std::size_t n = g.points.size();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
            std::optional<CrossingSequence> seq;
            try {
                seq = crossing_sequence(tri, g.shape, p, q);
            } catch (const ContractViolation&) {
                ++report.pairs_degenerate;
                continue;
            }
            if (!seq) {
                ++report.pairs_adjacent;
                continue;
            }
            if (!pair_box_empty(tri, *seq)) {
                ++report.pairs_box_nonempty;
                continue;
            }
            ++report.pairs_checked;
            auto append = [&](std::vector<LemmaRow> rows) {
                for (auto& r : rows)
                    if (!r.skipped) report.rows.push_back(std::move(r));
            };
            append(check_crossing_lemma(*seq, dist));
            append(check_lemma4(*seq, dist));
            for (std::size_t i = 1; i < seq->k; ++i) append({check_lemma5(*seq, dist, i)});
            for (std::size_t j = 1; j <= seq->k; ++j) append(check_lemma7(*seq, j));
            for (std::size_t i = 2; i < seq->k; ++i) append(check_lemma9(*seq, i));
        }
    std::stable_sort(report.rows.begin(), report.rows.end(), [](const LemmaRow& l, const LemmaRow& r) {
        return std::tie(l.a, l.b, l.lemma, l.index) < std::tie(r.a, r.b, r.lemma, r.index);
    });
    return report;
}

}  // namespace paradel
