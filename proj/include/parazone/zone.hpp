#pragma once

#include "parazone/geom.hpp"
#include "parazone/seq.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace parazone {

/// Chord names used in transcripts: a..z, then s27, s28, ...
std::string chord_label(std::size_t index);

/// Chord from two endpoint x-values in either order; throws when equal.
Chord chord_between(const Rat& x1, const Rat& x2);

/// JSON: {"chords": [["p", "q"], ...]} or a bare array of pairs. Numbers and
/// rational strings are both accepted.
std::vector<Chord> parse_chords_json(const nlohmann::json& j);
/// One "p,q" pair per line; blank lines and lines starting with '#' skipped.
std::vector<Chord> parse_chords_csv(std::string_view text);
/// Sniffs JSON by a leading '{' or '['.
std::vector<Chord> parse_chords(std::string_view text);
nlohmann::json chords_to_json(std::span<const Chord> chords);

struct PositionIssue {
    enum class Kind { SharedEndpoint, Parallel, Concurrent, SharedCrossingX, Disconnected };
    Kind kind = Kind::SharedEndpoint;
    std::vector<std::size_t> chords;
    std::string detail;
};

const char* to_string(PositionIssue::Kind k);

struct PositionReport {
    std::vector<PositionIssue> issues;

    bool ok() const { return issues.empty(); }
    std::string describe() const;
};

/// Distinct endpoints, no parallel or concurrent supporting lines, distinct
/// crossing x-values, and a connected intersection graph.
PositionReport validate_general_position(std::span<const Chord> chords);

struct ZoneVertex {
    Point at;
    /// Chord whose endpoint this is, or the two chords crossing here.
    std::size_t chord = 0;
    std::optional<std::size_t> other;
};

struct HalfEdge {
    enum class Kind { Segment, Arc, Infinite };
    Kind kind = Kind::Segment;
    std::size_t from = 0;
    std::size_t to = 0;
    /// Chord for Segment half-edges.
    std::size_t chord = 0;
    std::size_t twin = 0;
    std::size_t next = 0;
    std::size_t face = 0;
};

/// Planar subdivision of the region above y = x^2 cut by the chords. Arcs
/// of the parabola between x-consecutive endpoints are single edges; one
/// extra edge through infinity closes the curve. Half-edges keep their face
/// on the right.
struct Arrangement {
    std::vector<Chord> chords;
    /// Per chord, sorted x-values of its crossings.
    std::vector<std::vector<Rat>> crossings;
    std::vector<ZoneVertex> vertices;
    std::vector<HalfEdge> half_edges;
    /// Endpoint vertices in x order.
    std::vector<std::size_t> endpoint_order;
    /// Rightward arc half-edge between endpoint_order[i] and [i + 1].
    std::vector<std::size_t> arcs;
    std::size_t face_count = 0;
    /// Face below the parabola and the unbounded face above the chords.
    std::size_t outer_face = 0;
    std::size_t top_face = 0;

    std::size_t crossing_count() const;
    std::size_t edge_count() const { return half_edges.size() / 2; }
    /// Faces other than the outer and top ones.
    std::size_t inner_cells() const { return face_count - 2; }
    /// V - E + F == 2.
    bool euler_ok() const;
};

/// Throws InvalidInput carrying the general-position report on failure.
Arrangement build_arrangement(std::span<const Chord> chords);

struct Visit {
    std::size_t chord = 0;
    /// 0: first positive phase, 1: negative side, 2: later positive phase.
    int type = 0;
    std::size_t half_edge = 0;
    /// Index of the arc whose cell this sub-segment bounds.
    std::size_t cell = 0;
};

struct Transcript {
    std::vector<Visit> tour;
    /// Symbol 3 * chord + type.
    Seq s_prime;
    /// Negative-side visits only, symbol = chord.
    Seq s;
    std::size_t complexity = 0;
};

/// Walks from the leftmost to the rightmost endpoint with the walls on the
/// left hand, one zone cell per parabola arc.
Transcript zone_tour(const Arrangement& arr);

struct ZoneComplexity {
    std::size_t total = 0;
    /// Sub-segment incidences of the cell sitting on each arc.
    std::vector<std::size_t> per_cell;
};

ZoneComplexity zone_complexity(const Arrangement& arr);

struct Envelope {
    /// Lowest chord per maximal interval; nullopt where no chord is present.
    std::vector<std::optional<std::size_t>> items;

    /// Items with the gaps dropped.
    Seq seq() const;
};

/// Left-to-right lower envelope over [min endpoint, max endpoint]. Chords on
/// one common line tie towards the smaller index.
Envelope lower_envelope(std::span<const Chord> chords);

std::string format_sprime(const Transcript& t);
std::string format_s(const Transcript& t);
std::string format_envelope(const Envelope& e);

nlohmann::json transcript_to_json(const Arrangement& arr, const Transcript& t);

/// Parabola, chords, zone cells and the tour path.
std::string render_svg(const Arrangement& arr, const Transcript& t);

}  // namespace parazone
