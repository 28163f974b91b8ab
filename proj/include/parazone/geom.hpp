#pragma once

#include "parazone/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace parazone {

struct Point {
    Rat x;
    Rat y;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Segment with both endpoints on y = x^2, given by the endpoint
/// x-coordinates p < q. Its supporting line is y = (p + q) x - p q.
struct Chord {
    Rat p;
    Rat q;

    Rat slope() const { return p + q; }
    Rat intercept() const { return -p * q; }
    Rat eval(const Rat& x) const { return slope() * x + intercept(); }

    friend bool operator==(const Chord&, const Chord&) = default;
};

/// Throws InvalidInput unless p < q.
Chord make_chord(Rat p, Rat q);

/// Crossing of the supporting lines; none when parallel.
std::optional<Point> line_intersection(const Chord& a, const Chord& b);

/// Crossing strictly inside both chords' x-ranges. Throws on identical chords.
std::optional<Point> intersect_chords(const Chord& a, const Chord& b);

struct RatioQuad {
    Rat p;
    Rat q;
    Rat r;
    Rat s;
};

/// For a < b < c < d on the parabola and z = ac ∩ bd: p = b - a,
/// q = d - c, r = z_x - b, s = c - z_x. Always p s = q r.
RatioQuad parabola_ratio(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

enum class OrderClass { Concave, Convex, Neither };

const char* to_string(OrderClass c);

/// True iff L_1 < ... < L_m < R_1 < ... < R_m.
bool has_fan_order(std::span<const Chord> chords);

/// x-coordinates of a_{i+1} ∩ a_i for i = 1..m-1. Throws when the fan
/// order fails or an adjacent pair does not cross.
std::vector<Rat> adjacent_crossings(std::span<const Chord> chords);

/// Concave iff the crossings a_m ∩ a_{m-1}, ..., a_2 ∩ a_1 appear left to
/// right; convex iff in the reverse order. Fewer than three chords count as
/// concave.
OrderClass intersection_order_class(std::span<const Chord> chords);

struct RatioProfile {
    Rat alpha1;
    Rat alpha2;
    Rat gamma;
    Rat beta1;
    Rat beta2;
    bool claim1 = false;
    bool claim2 = false;
    bool claim3 = false;
};

/// Gaps between the six endpoints of a concave triple and the three ratio
/// claims evaluated exactly. Throws unless the triple is concave.
RatioProfile ratio_profile(std::span<const Chord> triple);

/// R_k - L_1 > 2 (R_{k-1} - L_1) for every k >= 2. Throws on order violation.
bool is_wide(std::span<const Chord> chords);

struct WideFanGaps {
    std::vector<Rat> alpha;
    std::vector<bool> dominant;

    bool all_dominant() const;
};

/// alpha_k = L_{k+1} - L_k with flags alpha_k > sum_{i>k} alpha_i for
/// k <= m-2. Throws unless the set is wide and concave.
WideFanGaps wide_fan_gaps(std::span<const Chord> chords);

/// Rational point of the unit circle for parameter t:
/// ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)).
Point circle_point(const Rat& t);

/// (x, y) -> (x / (1 - y), (1 + y) / (1 - y)). Throws for (0, 1) or points
/// off the unit circle.
Point map_circle_to_parabola(const Point& pt);

/// x -> a x + b; throws when a = 0.
Rat affine_remap(const Rat& x, const Rat& a, const Rat& b);

/// (x, y) -> (a x + b, 2 a b x + a^2 y + b^2), which maps y = x^2 to itself.
Point affine_remap_point(const Point& pt, const Rat& a, const Rat& b);

/// Endpoint-wise remap; for a < 0 the endpoints swap roles.
Chord affine_remap_chord(const Chord& c, const Rat& a, const Rat& b);

/// Three supporting lines through one point.
bool lines_concurrent(const Chord& a, const Chord& b, const Chord& c);

}  // namespace parazone
