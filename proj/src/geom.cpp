#include "parazone/geom.hpp"

#include "parazone/error.hpp"

namespace parazone {

namespace {

void require_fan_order(std::span<const Chord> chords) {
    if (!has_fan_order(chords))
        throw InvalidInput("endpoints are not in the order L_1 < ... < L_m < R_1 < ... < R_m");
}

}  // namespace

Chord make_chord(Rat p, Rat q) {
    if (!(p < q)) throw InvalidInput("chord needs p < q, got (" + to_string(p) + ", " + to_string(q) + ")");
    return {std::move(p), std::move(q)};
}

std::optional<Point> line_intersection(const Chord& a, const Chord& b) {
    const Rat ds = a.slope() - b.slope();
    if (ds == 0) return std::nullopt;
    Rat x = (b.intercept() - a.intercept()) / ds;
    Rat y = a.eval(x);
    return Point{std::move(x), std::move(y)};
}

std::optional<Point> intersect_chords(const Chord& a, const Chord& b) {
    if (a == b) throw InvalidInput("identical chords have no isolated intersection");
    auto z = line_intersection(a, b);
    if (!z) return std::nullopt;
    const bool inside = a.p < z->x && z->x < a.q && b.p < z->x && z->x < b.q;
    if (!inside) return std::nullopt;
    return z;
}

RatioQuad parabola_ratio(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    if (!(a < b && b < c && c < d)) throw InvalidInput("parabola ratio needs a < b < c < d");
    const auto z = line_intersection(Chord{a, c}, Chord{b, d});
    return {b - a, d - c, z->x - b, c - z->x};
}

const char* to_string(OrderClass c) {
    switch (c) {
        case OrderClass::Concave: return "concave";
        case OrderClass::Convex: return "convex";
        case OrderClass::Neither: return "neither";
    }
    return "neither";
}

bool has_fan_order(std::span<const Chord> chords) {
    for (std::size_t i = 0; i < chords.size(); ++i) {
        if (!(chords[i].p < chords[i].q)) return false;
        if (i > 0 && !(chords[i - 1].p < chords[i].p && chords[i - 1].q < chords[i].q)) return false;
    }
    return chords.empty() || chords.back().p < chords.front().q;
}

std::vector<Rat> adjacent_crossings(std::span<const Chord> chords) {
    require_fan_order(chords);
    std::vector<Rat> xs;
    for (std::size_t i = 0; i + 1 < chords.size(); ++i) {
        const auto z = intersect_chords(chords[i], chords[i + 1]);
        if (!z) throw InvalidInput("chords " + std::to_string(i + 1) + " and " + std::to_string(i + 2) + " do not cross");
        xs.push_back(z->x);
    }
    return xs;
}

OrderClass intersection_order_class(std::span<const Chord> chords) {
    const auto xs = adjacent_crossings(chords);
    if (xs.size() < 2) return OrderClass::Concave;
    bool decreasing = true;
    bool increasing = true;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        decreasing = decreasing && xs[i + 1] < xs[i];
        increasing = increasing && xs[i] < xs[i + 1];
    }
    if (decreasing) return OrderClass::Concave;
    if (increasing) return OrderClass::Convex;
    return OrderClass::Neither;
}

RatioProfile ratio_profile(std::span<const Chord> triple) {
    if (triple.size() != 3) throw InvalidInput("ratio profile needs exactly three chords");
    if (intersection_order_class(triple) != OrderClass::Concave)
        throw InvalidInput("ratio profile needs a concave triple");
    RatioProfile r;
    r.alpha1 = triple[1].p - triple[0].p;
    r.alpha2 = triple[2].p - triple[1].p;
    r.gamma = triple[0].q - triple[2].p;
    r.beta1 = triple[1].q - triple[0].q;
    r.beta2 = triple[2].q - triple[1].q;
    r.claim1 = r.alpha1 / r.beta1 > r.alpha2 / r.gamma && r.beta2 / r.alpha2 > r.beta1 / r.gamma;
    r.claim2 = r.alpha1 / r.beta1 > r.alpha2 / r.beta2;
    r.claim3 = r.beta1 < r.beta2 || r.alpha2 < r.gamma + r.beta1 + r.beta2;
    return r;
}

bool is_wide(std::span<const Chord> chords) {
    require_fan_order(chords);
    for (std::size_t k = 1; k < chords.size(); ++k)
        if (!(chords[k].q - chords[0].p > 2 * (chords[k - 1].q - chords[0].p))) return false;
    return true;
}

bool WideFanGaps::all_dominant() const {
    for (bool d : dominant)
        if (!d) return false;
    return true;
}

WideFanGaps wide_fan_gaps(std::span<const Chord> chords) {
    if (!is_wide(chords)) throw InvalidInput("wide-fan gaps need a wide set");
    if (intersection_order_class(chords) != OrderClass::Concave)
        throw InvalidInput("wide-fan gaps need a concave set");
    WideFanGaps g;
    for (std::size_t k = 0; k + 1 < chords.size(); ++k) g.alpha.push_back(chords[k + 1].p - chords[k].p);
    Rat tail = 0;
    std::vector<bool> flags(g.alpha.size() >= 2 ? g.alpha.size() - 1 : 0);
    for (std::size_t k = g.alpha.size(); k-- > 0;) {
        if (k < flags.size()) flags[k] = g.alpha[k] > tail;
        tail += g.alpha[k];
    }
    g.dominant = std::move(flags);
    return g;
}

Point circle_point(const Rat& t) {
    const Rat den = 1 + t * t;
    return {(1 - t * t) / den, 2 * t / den};
}

Point map_circle_to_parabola(const Point& pt) {
    if (pt.x * pt.x + pt.y * pt.y != 1) throw InvalidInput("point is not on the unit circle");
    if (pt.y == 1) throw InvalidInput("the point (0, 1) has no image on the parabola");
    const Rat d = 1 - pt.y;
    return {pt.x / d, (1 + pt.y) / d};
}

Rat affine_remap(const Rat& x, const Rat& a, const Rat& b) {
    if (a == 0) throw InvalidInput("affine remap needs a != 0");
    return a * x + b;
}

Point affine_remap_point(const Point& pt, const Rat& a, const Rat& b) {
    if (a == 0) throw InvalidInput("affine remap needs a != 0");
    return {a * pt.x + b, 2 * a * b * pt.x + a * a * pt.y + b * b};
}

Chord affine_remap_chord(const Chord& c, const Rat& a, const Rat& b) {
    Rat x1 = affine_remap(c.p, a, b);
    Rat x2 = affine_remap(c.q, a, b);
    if (x2 < x1) std::swap(x1, x2);
    return {std::move(x1), std::move(x2)};
}

bool lines_concurrent(const Chord& a, const Chord& b, const Chord& c) {
    const auto z = line_intersection(a, b);
    if (!z) return false;
    return c.eval(z->x) == z->y;
}

}  // namespace parazone
