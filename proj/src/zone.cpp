#include "parazone/zone.hpp"

#include "parazone/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace parazone {

namespace {

Rat json_rat(const nlohmann::json& v) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    throw InvalidInput("chord coordinates must be integers or rational strings, got " + v.dump());
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::string point_text(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

std::string chord_list(const std::vector<std::size_t>& chords) {
    std::string out;
    for (std::size_t i = 0; i < chords.size(); ++i) out += (i ? ", " : "") + chord_label(chords[i]);
    return out;
}

/// Direction of an outgoing half-edge: rightward or leftward along a line of
/// the given slope. Counterclockwise order is rightward by increasing slope,
/// then leftward by increasing slope.
struct Direction {
    int side = 1;
    Rat slope;

    bool operator<(const Direction& o) const {
        if (side != o.side) return side > o.side;
        return slope < o.slope;
    }
};

}  // namespace

std::string chord_label(std::size_t index) {
    if (index < 26) return std::string(1, static_cast<char>('a' + index));
    return "s" + std::to_string(index + 1);
}

Chord chord_between(const Rat& x1, const Rat& x2) {
    if (x1 == x2) throw InvalidInput("chord endpoints coincide at x = " + to_string(x1));
    return x1 < x2 ? Chord{x1, x2} : Chord{x2, x1};
}

std::vector<Chord> parse_chords_json(const nlohmann::json& j) {
    const nlohmann::json& arr = j.is_object() ? j.at("chords") : j;
    if (!arr.is_array()) throw InvalidInput("chord list must be an array of pairs");
    std::vector<Chord> out;
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2) throw InvalidInput("each chord must be a pair, got " + pair.dump());
        out.push_back(chord_between(json_rat(pair[0]), json_rat(pair[1])));
    }
    return out;
}

std::vector<Chord> parse_chords_csv(std::string_view text) {
    std::vector<Chord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InvalidInput("chord line needs 'p,q': " + line);
        out.push_back(chord_between(parse_rat(line.substr(0, comma)), parse_rat(line.substr(comma + 1))));
    }
    return out;
}

std::vector<Chord> parse_chords(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (text[first] == '{' || text[first] == '[')) {
        try {
            return parse_chords_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput(std::string("malformed chord JSON: ") + e.what());
        }
    }
    return parse_chords_csv(text);
}

nlohmann::json chords_to_json(std::span<const Chord> chords) {
    auto arr = nlohmann::json::array();
    for (const auto& c : chords) arr.push_back({to_string(c.p), to_string(c.q)});
    return {{"chords", arr}};
}

const char* to_string(PositionIssue::Kind k) {
    switch (k) {
        case PositionIssue::Kind::SharedEndpoint: return "shared endpoint";
        case PositionIssue::Kind::Parallel: return "parallel";
        case PositionIssue::Kind::Concurrent: return "concurrent";
        case PositionIssue::Kind::SharedCrossingX: return "shared crossing x";
        case PositionIssue::Kind::Disconnected: return "disconnected";
    }
    return "?";
}

std::string PositionReport::describe() const {
    if (issues.empty()) return "general position ok";
    std::string out;
    for (const auto& i : issues) {
        if (!out.empty()) out += "; ";
        out += std::string(to_string(i.kind)) + " (" + chord_list(i.chords) + ")";
        if (!i.detail.empty()) out += " " + i.detail;
    }
    return out;
}

PositionReport validate_general_position(std::span<const Chord> chords) {
    PositionReport rep;
    using Kind = PositionIssue::Kind;
    const std::size_t n = chords.size();
    if (n == 0) {
        rep.issues.push_back({Kind::Disconnected, {}, "no chords"});
        return rep;
    }
    for (const auto& c : chords)
        if (!(c.p < c.q)) throw InvalidInput("chord needs p < q, got (" + to_string(c.p) + ", " + to_string(c.q) + ")");

    std::vector<std::pair<Rat, std::size_t>> ends;
    for (std::size_t i = 0; i < n; ++i) {
        ends.emplace_back(chords[i].p, i);
        ends.emplace_back(chords[i].q, i);
    }
    std::sort(ends.begin(), ends.end());
    for (std::size_t i = 1; i < ends.size(); ++i)
        if (ends[i].first == ends[i - 1].first)
            rep.issues.push_back({Kind::SharedEndpoint, {ends[i - 1].second, ends[i].second}, "at x = " + to_string(ends[i].first)});

    std::map<std::pair<Rat, Rat>, std::vector<std::size_t>> meets;
    // x -> (y -> chords crossing there)
    std::map<Rat, std::map<Rat, std::vector<std::size_t>>> crossing_x;
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (chords[i] == chords[j]) {
                rep.issues.push_back({Kind::Parallel, {i, j}, "identical chords"});
                continue;
            }
            const auto z = line_intersection(chords[i], chords[j]);
            if (!z) {
                rep.issues.push_back({Kind::Parallel, {i, j}, ""});
                continue;
            }
            auto& at = meets[{z->x, z->y}];
            for (std::size_t c : {i, j})
                if (std::find(at.begin(), at.end(), c) == at.end()) at.push_back(c);
            if (intersect_chords(chords[i], chords[j])) {
                auto& cs = crossing_x[z->x][z->y];
                cs.push_back(i);
                cs.push_back(j);
                uf.unite(i, j);
            }
        }
    for (auto& [pt, cs] : meets)
        if (cs.size() >= 3) {
            std::sort(cs.begin(), cs.end());
            rep.issues.push_back({Kind::Concurrent, cs, "at " + point_text({pt.first, pt.second})});
        }
    for (const auto& [x, points] : crossing_x) {
        if (points.size() < 2) continue;
        std::vector<std::size_t> cs;
        for (const auto& [y, ids] : points) cs.insert(cs.end(), ids.begin(), ids.end());
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        rep.issues.push_back({Kind::SharedCrossingX, cs, "at x = " + to_string(x)});
    }
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i)
        if (uf.find(i) == i) reps.push_back(i);
    if (reps.size() > 1) {
        rep.issues.push_back({Kind::Disconnected, reps, std::to_string(reps.size()) + " components in the intersection graph"});
    }
    return rep;
}

std::size_t Arrangement::crossing_count() const {
    std::size_t total = 0;
    for (const auto& c : crossings) total += c.size();
    return total / 2;
}

bool Arrangement::euler_ok() const {
    const long v = static_cast<long>(vertices.size());
    const long e = static_cast<long>(edge_count());
    const long f = static_cast<long>(face_count);
    return v - e + f == 2;
}

Arrangement build_arrangement(std::span<const Chord> chords) {
    const auto report = validate_general_position(chords);
    if (!report.ok()) throw InvalidInput("chords are not in general position: " + report.describe());

    Arrangement arr;
    arr.chords.assign(chords.begin(), chords.end());
    const std::size_t n = chords.size();
    arr.crossings.assign(n, {});

    for (std::size_t i = 0; i < n; ++i) {
        arr.vertices.push_back({{chords[i].p, chords[i].p * chords[i].p}, i, std::nullopt});
        arr.vertices.push_back({{chords[i].q, chords[i].q * chords[i].q}, i, std::nullopt});
    }
    // Per chord: (x, vertex) along it.
    std::vector<std::vector<std::pair<Rat, std::size_t>>> along(n);
    for (std::size_t i = 0; i < n; ++i) {
        along[i].emplace_back(chords[i].p, 2 * i);
        along[i].emplace_back(chords[i].q, 2 * i + 1);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (auto z = intersect_chords(chords[i], chords[j])) {
                const std::size_t v = arr.vertices.size();
                arr.vertices.push_back({*z, i, j});
                along[i].emplace_back(z->x, v);
                along[j].emplace_back(z->x, v);
                arr.crossings[i].push_back(z->x);
                arr.crossings[j].push_back(z->x);
            }
    for (auto& c : arr.crossings) std::sort(c.begin(), c.end());

    std::vector<Direction> dir;
    auto add_edge = [&](HalfEdge::Kind kind, std::size_t u, std::size_t v, std::size_t chord, Direction du, Direction dv) {
        const std::size_t h = arr.half_edges.size();
        arr.half_edges.push_back({kind, u, v, chord, h + 1, 0, 0});
        arr.half_edges.push_back({kind, v, u, chord, h, 0, 0});
        dir.push_back(std::move(du));
        dir.push_back(std::move(dv));
        return h;
    };

    for (std::size_t i = 0; i < n; ++i) {
        auto& pts = along[i];
        std::sort(pts.begin(), pts.end());
        const Rat slope = chords[i].slope();
        for (std::size_t k = 0; k + 1 < pts.size(); ++k)
            add_edge(HalfEdge::Kind::Segment, pts[k].second, pts[k + 1].second, i, {1, slope}, {-1, slope});
    }

    std::vector<std::size_t> ends(2 * n);
    std::iota(ends.begin(), ends.end(), 0);
    std::sort(ends.begin(), ends.end(), [&](std::size_t a, std::size_t b) { return arr.vertices[a].at.x < arr.vertices[b].at.x; });
    arr.endpoint_order = ends;
    for (std::size_t k = 0; k + 1 < ends.size(); ++k) {
        const Rat& x0 = arr.vertices[ends[k]].at.x;
        const Rat& x1 = arr.vertices[ends[k + 1]].at.x;
        arr.arcs.push_back(add_edge(HalfEdge::Kind::Arc, ends[k], ends[k + 1], 0, {1, 2 * x0}, {-1, 2 * x1}));
    }
    const Rat& xfirst = arr.vertices[ends.front()].at.x;
    const Rat& xlast = arr.vertices[ends.back()].at.x;
    const std::size_t inf = add_edge(HalfEdge::Kind::Infinite, ends.back(), ends.front(), 0, {1, 2 * xlast}, {-1, 2 * xfirst});

    // Rotation system and face-on-right successor.
    std::vector<std::vector<std::size_t>> rot(arr.vertices.size());
    for (std::size_t h = 0; h < arr.half_edges.size(); ++h) rot[arr.half_edges[h].from].push_back(h);
    std::vector<std::size_t> slot(arr.half_edges.size());
    for (auto& r : rot) {
        std::sort(r.begin(), r.end(), [&](std::size_t a, std::size_t b) { return dir[a] < dir[b]; });
        for (std::size_t k = 0; k < r.size(); ++k) slot[r[k]] = k;
    }
    for (auto& h : arr.half_edges) {
        const auto& r = rot[h.to];
        h.next = r[(slot[h.twin] + 1) % r.size()];
    }

    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    for (auto& h : arr.half_edges) h.face = kUnset;
    for (std::size_t h = 0; h < arr.half_edges.size(); ++h) {
        if (arr.half_edges[h].face != kUnset) continue;
        std::size_t cur = h;
        do {
            arr.half_edges[cur].face = arr.face_count;
            cur = arr.half_edges[cur].next;
        } while (cur != h);
        ++arr.face_count;
    }
    arr.outer_face = arr.half_edges[inf].face;
    arr.top_face = arr.half_edges[inf + 1].face;
    if (!arr.euler_ok()) throw std::logic_error("arrangement violates the Euler relation");
    return arr;
}

Transcript zone_tour(const Arrangement& arr) {
    Transcript t;
    std::vector<bool> seen_negative(arr.chords.size(), false);
    for (std::size_t cell = 0; cell < arr.arcs.size(); ++cell) {
        const std::size_t start = arr.half_edges[arr.arcs[cell]].twin;
        std::size_t cur = arr.half_edges[start].next;
        std::size_t guard = 0;
        while (cur != start) {
            if (++guard > arr.half_edges.size()) throw std::logic_error("zone tour did not close");
            const HalfEdge& h = arr.half_edges[cur];
            if (h.kind == HalfEdge::Kind::Infinite) throw std::logic_error("zone tour reached an unbounded cell");
            if (h.kind == HalfEdge::Kind::Segment) {
                // Sub-segments below a chord run rightwards, above it leftwards.
                const bool below = arr.vertices[h.from].at.x < arr.vertices[h.to].at.x;
                int type = 1;
                if (below) seen_negative[h.chord] = true;
                else type = seen_negative[h.chord] ? 2 : 0;
                t.tour.push_back({h.chord, type, cur, cell});
                t.s_prime.tokens.push_back(3 * h.chord + static_cast<Symbol>(type));
                if (type == 1) t.s.tokens.push_back(h.chord);
            }
            cur = h.next;
        }
    }
    t.complexity = t.tour.size();
    return t;
}

ZoneComplexity zone_complexity(const Arrangement& arr) {
    ZoneComplexity z;
    z.per_cell.assign(arr.arcs.size(), 0);
    for (std::size_t cell = 0; cell < arr.arcs.size(); ++cell) {
        const std::size_t start = arr.half_edges[arr.arcs[cell]].twin;
        for (std::size_t cur = arr.half_edges[start].next; cur != start; cur = arr.half_edges[cur].next)
            if (arr.half_edges[cur].kind == HalfEdge::Kind::Segment) ++z.per_cell[cell];
        z.total += z.per_cell[cell];
    }
    return z;
}

Seq Envelope::seq() const {
    Seq s;
    for (const auto& i : items)
        if (i) s.tokens.push_back(*i);
    return s;
}

Envelope lower_envelope(std::span<const Chord> chords) {
    Envelope env;
    if (chords.empty()) return env;
    std::vector<Rat> cuts;
    for (const auto& c : chords) {
        if (!(c.p < c.q)) throw InvalidInput("chord needs p < q");
        cuts.push_back(c.p);
        cuts.push_back(c.q);
    }
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            if (auto z = line_intersection(chords[i], chords[j])) cuts.push_back(z->x);
    const Rat lo = *std::min_element(cuts.begin(), cuts.begin() + static_cast<long>(2 * chords.size()));
    const Rat hi = *std::max_element(cuts.begin(), cuts.begin() + static_cast<long>(2 * chords.size()));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (cuts[k] < lo || cuts[k + 1] > hi) continue;
        const Rat mid = (cuts[k] + cuts[k + 1]) / 2;
        std::optional<std::size_t> best;
        Rat best_y;
        for (std::size_t i = 0; i < chords.size(); ++i) {
            if (!(chords[i].p < mid && mid < chords[i].q)) continue;
            Rat y = chords[i].eval(mid);
            if (!best || y < best_y) {
                best = i;
                best_y = std::move(y);
            }
        }
        if (env.items.empty() || env.items.back() != best) env.items.push_back(best);
    }
    return env;
}

std::string format_sprime(const Transcript& t) {
    std::string out;
    for (const auto& v : t.tour) {
        if (!out.empty()) out += ' ';
        out += chord_label(v.chord);
        if (v.type == 0) out += "′";
        if (v.type == 2) out += "″";
    }
    return out;
}

std::string format_s(const Transcript& t) {
    std::string out;
    for (Symbol s : t.s.tokens) {
        if (!out.empty()) out += ' ';
        out += chord_label(s);
    }
    return out;
}

std::string format_envelope(const Envelope& e) {
    std::string out;
    for (const auto& i : e.items) {
        if (!out.empty()) out += ' ';
        out += i ? chord_label(*i) : "∞";
    }
    return out;
}

nlohmann::json transcript_to_json(const Arrangement& arr, const Transcript& t) {
    nlohmann::json j;
    auto sp = nlohmann::json::array();
    for (const auto& v : t.tour) {
        std::string tok = chord_label(v.chord);
        if (v.type == 0) tok += "'";
        if (v.type == 2) tok += "''";
        sp.push_back(tok);
    }
    auto s = nlohmann::json::array();
    for (Symbol c : t.s.tokens) s.push_back(chord_label(c));
    j["chords"] = chords_to_json(arr.chords).at("chords");
    j["s_prime"] = sp;
    j["s"] = s;
    j["complexity"] = t.complexity;
    j["per_cell"] = zone_complexity(arr).per_cell;
    j["vertices"] = arr.vertices.size();
    j["edges"] = arr.edge_count();
    j["faces"] = arr.face_count;
    j["inner_cells"] = arr.inner_cells();
    j["crossings"] = arr.crossing_count();
    return j;
}

std::string render_svg(const Arrangement& arr, const Transcript& t) {
    // Presentation only: floating point is fine here.
    double xmin = to_double(arr.vertices[arr.endpoint_order.front()].at.x);
    double xmax = to_double(arr.vertices[arr.endpoint_order.back()].at.x);
    double ymin = (xmin <= 0 && xmax >= 0) ? 0.0 : std::min(xmin * xmin, xmax * xmax);
    double ymax = std::max(xmin * xmin, xmax * xmax);
    const double mx = 0.1 * std::max(xmax - xmin, 1e-9);
    const double my = 0.1 * std::max(ymax - ymin, 1e-9);
    xmin -= mx;
    xmax += mx;
    ymin -= my;
    ymax += my;
    const double width = 800.0;
    const double height = 600.0;
    auto sx = [&](double x) { return (x - xmin) / (xmax - xmin) * width; };
    auto sy = [&](double y) { return height - (y - ymin) / (ymax - ymin) * height; };
    auto pt = [&](double x, double y) {
        std::ostringstream o;
        o << sx(x) << ',' << sy(y);
        return o.str();
    };
    auto arc_points = [&](double x0, double x1, std::string& out) {
        for (int k = 1; k < 16; ++k) {
            const double x = x0 + (x1 - x0) * k / 16.0;
            out += pt(x, x * x) + ' ';
        }
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t cell = 0; cell < arr.arcs.size(); ++cell) {
        const std::size_t start = arr.half_edges[arr.arcs[cell]].twin;
        std::string poly;
        std::size_t cur = start;
        do {
            const HalfEdge& h = arr.half_edges[cur];
            const double x0 = to_double(arr.vertices[h.from].at.x);
            const double y0 = to_double(arr.vertices[h.from].at.y);
            poly += pt(x0, y0) + ' ';
            if (h.kind == HalfEdge::Kind::Arc) arc_points(x0, to_double(arr.vertices[h.to].at.x), poly);
            cur = h.next;
        } while (cur != start);
        svg << "<polygon points=\"" << poly << "\" fill=\"" << (cell % 2 ? "#dbe9f6" : "#f6e7d8")
            << "\" stroke=\"none\"/>\n";
    }

    std::string curve;
    for (int k = 0; k <= 200; ++k) {
        const double x = xmin + (xmax - xmin) * k / 200.0;
        curve += pt(x, x * x) + ' ';
    }
    svg << "<polyline points=\"" << curve << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    for (std::size_t i = 0; i < arr.chords.size(); ++i) {
        const double p = to_double(arr.chords[i].p);
        const double q = to_double(arr.chords[i].q);
        svg << "<line x1=\"" << sx(p) << "\" y1=\"" << sy(p * p) << "\" x2=\"" << sx(q) << "\" y2=\"" << sy(q * q)
            << "\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << sx(q) + 4 << "\" y=\"" << sy(q * q) << "\" font-size=\"12\">" << chord_label(i)
            << "</text>\n";
    }

    std::string path;
    for (const auto& v : t.tour) {
        const HalfEdge& h = arr.half_edges[v.half_edge];
        if (path.empty())
            path += "M" + pt(to_double(arr.vertices[h.from].at.x), to_double(arr.vertices[h.from].at.y)) + ' ';
        path += "L" + pt(to_double(arr.vertices[h.to].at.x), to_double(arr.vertices[h.to].at.y)) + ' ';
    }
    if (!path.empty())
        svg << "<path d=\"" << path << "\" fill=\"none\" stroke=\"#c00000\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace parazone
