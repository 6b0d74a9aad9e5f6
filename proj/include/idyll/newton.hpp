#pragma once

// Newton polygons and initial forms over tropical extensions.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "idyll/extension.hpp"
#include "idyll/poly.hpp"

namespace idyll {

struct NewtonPoint {
    int deg;
    Rational value;
    friend bool operator==(const NewtonPoint&, const NewtonPoint&) = default;
};

struct NewtonEdge {
    Rational slope;
    int start;
    int end;
    int width() const { return end - start; }
};

struct NewtonPolygon {
    std::vector<NewtonPoint> points; // support points, by degree
    std::vector<NewtonPoint> hull;   // lower hull vertices, by degree
    std::vector<NewtonEdge> edges;   // slopes strictly increasing

    /// The edge of the given slope, or a width-0 edge when there is none.
    NewtonEdge edge_with_slope(const Rational& slope) const {
        for (const auto& e : edges)
            if (e.slope == slope) return e;
        return {slope, 0, 0};
    }
};

/// Lower convex hull of the points (i, value_i) by the monotone chain.
inline NewtonPolygon newton_polygon(std::vector<NewtonPoint> pts) {
    if (pts.empty()) throw precondition_error("Newton polygon of the zero polynomial");
    std::sort(pts.begin(), pts.end(), [](const NewtonPoint& a, const NewtonPoint& b) { return a.deg < b.deg; });
    NewtonPolygon np;
    np.points = pts;
    auto cross = [](const NewtonPoint& o, const NewtonPoint& a, const NewtonPoint& b) {
        return Rational(a.deg - o.deg) * (b.value - o.value) - (a.value - o.value) * Rational(b.deg - o.deg);
    };
    for (const auto& p : pts) {
        while (np.hull.size() >= 2 && cross(np.hull[np.hull.size() - 2], np.hull.back(), p) <= 0) np.hull.pop_back();
        np.hull.push_back(p);
    }
    for (std::size_t i = 1; i < np.hull.size(); ++i) {
        const auto& a = np.hull[i - 1];
        const auto& b = np.hull[i];
        np.edges.push_back({(b.value - a.value) / Rational(b.deg - a.deg), a.deg, b.deg});
    }
    return np;
}

/// Points (i, v(c_i)) of a polynomial over a rank-1 valued idyll.
template <ValuedIdyll I>
std::vector<NewtonPoint> newton_points(const I& b, const Polynomial<typename I::element>& f) {
    if (b.rank() != 1) throw structural_error("Newton polygons need a rank-1 value group");
    std::vector<NewtonPoint> out;
    for (int i : f.support()) out.push_back({i, b.valuation(f.coeff(i))[0]});
    return out;
}

template <ValuedIdyll I>
NewtonPolygon newton_polygon(const I& b, const Polynomial<typename I::element>& f) {
    return newton_polygon(newton_points(b, f));
}

/// Degrees attaining min of value_i + i*w; these are the points on the edge of slope -w.
inline std::vector<int> argmin_degrees(const std::vector<NewtonPoint>& pts, const Rational& w) {
    std::vector<int> out;
    std::optional<Rational> best;
    for (const auto& p : pts) {
        Rational v = p.value + w * p.deg;
        if (!best || v < *best) {
            best = v;
            out.clear();
        }
        if (v == *best) out.push_back(p.deg);
    }
    return out;
}

/// Support points lying on the supporting line of slope s.
inline std::vector<int> supporting_points(const NewtonPolygon& np, const Rational& s) {
    return argmin_degrees(np.points, -s);
}

// ---------------------------------------------------------------------------
// Initial forms.

template <class U>
struct LevelForm {
    OagValue level;          // g0 = min v(c_i) + i g
    Polynomial<ExtElem<U>> form; // sum over the argmin set of c_i a^i x^i, all at level g0
    Polynomial<U> normalized;    // (1^g0)^{-1} times the form, over B
};

/// Lex argmin of level_i + i*g over the support.
template <class U>
std::vector<int> ext_argmin(const Polynomial<ExtElem<U>>& f, const OagValue& g) {
    std::vector<int> out;
    OagValue best = OagValue::infinity();
    for (int i : f.support()) {
        OagValue v = f.coeff(i).level + static_cast<long long>(i) * g;
        if (v < best) {
            best = v;
            out.clear();
        }
        if (v == best) out.push_back(i);
    }
    return out;
}

/// In_g f = sum over the argmin set of lc(c_i) x^i, over the base.
template <Idyll B>
Polynomial<typename B::element> initial_form_split(const Extension<B>& e,
                                                   const Polynomial<typename Extension<B>::element>& f,
                                                   const OagValue& g) {
    if (f.is_zero()) throw precondition_error("initial form of the zero polynomial");
    if (g.rank() != e.rank()) throw structural_error("slope has the wrong rank");
    std::vector<std::pair<int, typename B::element>> terms;
    for (int i : ext_argmin(f, g)) terms.push_back({i, f.coeff(i).unit});
    return Polynomial<typename B::element>::from_terms(terms);
}

/// In_a f for nonzero a, kept at its torsor level and also normalized down to B.
template <Idyll B>
LevelForm<typename B::element> initial_form_at(const Extension<B>& e,
                                               const Polynomial<typename Extension<B>::element>& f,
                                               const typename Extension<B>::element& a) {
    using E = typename Extension<B>::element;
    if (!a.nonzero) throw precondition_error("initial form at zero; use the lowest support degree instead");
    if (f.is_zero()) throw precondition_error("initial form of the zero polynomial");
    auto idx = ext_argmin(f, a.level);
    LevelForm<typename B::element> out;
    out.level = f.coeff(idx.front()).level + static_cast<long long>(idx.front()) * a.level;
    E rep_inv = e.inv(e.representative(out.level));
    std::vector<std::pair<int, E>> terms;
    std::vector<std::pair<int, typename B::element>> base_terms;
    for (int i : idx) {
        E power = e.one();
        for (int k = 0; k < i; ++k) power = e.mul(power, a);
        E t = e.mul(f.coeff(i), power);
        terms.push_back({i, t});
        base_terms.push_back({i, e.mul(t, rep_inv).unit});
    }
    out.form = Polynomial<E>::from_terms(terms);
    out.normalized = Polynomial<typename B::element>::from_terms(base_terms);
    return out;
}

/// Drops the first coordinate of every level: the rank-1 initial form of a
/// polynomial over B[R^n] viewed as a polynomial over B[R^{n-1}][R].
template <class U>
Polynomial<ExtElem<U>> initial_form_round(const Polynomial<ExtElem<U>>& f, const Rational& head) {
    std::vector<NewtonPoint> pts;
    for (int i : f.support()) pts.push_back({i, f.coeff(i).level[0]});
    std::vector<std::pair<int, ExtElem<U>>> terms;
    for (int i : argmin_degrees(pts, head)) {
        auto c = f.coeff(i);
        terms.push_back({i, ExtElem<U>{true, c.unit, project_head(c.level).tail}});
    }
    return Polynomial<ExtElem<U>>::from_terms(terms);
}

/// All intermediate forms of the head/tail recursion, from rank n-1 down to rank 0.
template <class U>
std::vector<Polynomial<ExtElem<U>>> initial_form_rounds(const Polynomial<ExtElem<U>>& f, const OagValue& g) {
    if (f.is_zero()) throw precondition_error("initial form of the zero polynomial");
    for (int i : f.support())
        if (f.coeff(i).level.rank() != g.rank()) throw structural_error("slope has the wrong rank");
    std::vector<Polynomial<ExtElem<U>>> out;
    Polynomial<ExtElem<U>> cur = f;
    OagValue rest = g;
    for (std::size_t k = 0; k < g.rank(); ++k) {
        auto split = project_head(rest);
        cur = initial_form_round(cur, *split.head);
        rest = split.tail;
        out.push_back(cur);
    }
    return out;
}

/// In_g f computed one coordinate at a time.
template <class U>
Polynomial<U> initial_form_recursive(const Polynomial<ExtElem<U>>& f, const OagValue& g) {
    if (g.rank() == 0) return map_coeffs(f, [](const ExtElem<U>& c) { return c.unit; });
    auto rounds = initial_form_rounds(f, g);
    return map_coeffs(rounds.back(), [](const ExtElem<U>& c) { return c.unit; });
}

// ---------------------------------------------------------------------------
// Rendering.

inline nlohmann::json polygon_to_json(const NewtonPolygon& np) {
    nlohmann::json j;
    auto pts = [](const std::vector<NewtonPoint>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& p : v) a.push_back({{"deg", p.deg}, {"value", to_string(p.value)}});
        return a;
    };
    j["points"] = pts(np.points);
    j["hull"] = pts(np.hull);
    j["edges"] = nlohmann::json::array();
    for (const auto& e : np.edges)
        j["edges"].push_back({{"slope", to_string(e.slope)}, {"start", e.start}, {"end", e.end}, {"width", e.width()}});
    return j;
}

/// Character grid: `o` support points, `*` hull vertices, `.` hull segments at
/// integer abscissae. Rows run from the largest value (top) to the smallest.
/// Values are snapped to the lattice of their common denominator.
inline std::string render_ascii(const NewtonPolygon& np) {
    Integer den = 1;
    for (const auto& p : np.points) den = boost::multiprecision::lcm(den, denominator(p.value));
    auto row_of = [&](const Rational& v) { return static_cast<long long>(numerator(Rational(v * Rational(den)))); };
    long long lo = row_of(np.points.front().value), hi = lo;
    int maxdeg = 0, mindeg = np.points.front().deg;
    for (const auto& p : np.points) {
        lo = std::min(lo, row_of(p.value));
        hi = std::max(hi, row_of(p.value));
        maxdeg = std::max(maxdeg, p.deg);
        mindeg = std::min(mindeg, p.deg);
    }
    const int width = maxdeg - mindeg + 1;
    std::vector<std::string> grid(static_cast<std::size_t>(hi - lo + 1), std::string(static_cast<std::size_t>(2 * width - 1), ' '));
    auto put = [&](int deg, const Rational& v, char ch) {
        Rational scaled = v * Rational(den);
        if (denominator(scaled) != 1) return;
        long long r = hi - static_cast<long long>(numerator(scaled));
        auto& cell = grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(2 * (deg - mindeg))];
        if (cell == ' ' || ch != '.') cell = ch;
    };
    for (const auto& e : np.edges) {
        for (int d = e.start + 1; d < e.end; ++d) {
            Rational v = np.hull.front().value;
            for (const auto& h : np.hull)
                if (h.deg == e.start) v = h.value;
            put(d, v + e.slope * (d - e.start), '.');
        }
    }
    for (const auto& p : np.points) put(p.deg, p.value, 'o');
    for (const auto& h : np.hull) put(h.deg, h.value, '*');
    std::ostringstream out;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        Rational label(Integer(hi - static_cast<long long>(r)), den);
        std::string l = to_string(label);
        out << std::string(l.size() < 6 ? 6 - l.size() : 0, ' ') << l << " |" << grid[r] << "\n";
    }
    out << "       +" << std::string(static_cast<std::size_t>(2 * width - 1), '-') << "\n        ";
    for (int d = mindeg; d <= maxdeg; ++d) out << (d % 10) << (d < maxdeg ? " " : "");
    out << "\n";
    for (const auto& e : np.edges)
        out << "edge slope " << to_string(e.slope) << " from " << e.start << " to " << e.end << " (width " << e.width()
            << ")\n";
    return out.str();
}

inline std::string render_svg(const NewtonPolygon& np) {
    Integer den = 1;
    for (const auto& p : np.points) den = boost::multiprecision::lcm(den, denominator(p.value));
    auto y_of = [&](const Rational& v) { return static_cast<long long>(numerator(Rational(v * Rational(den)))); };
    long long lo = y_of(np.points.front().value), hi = lo;
    int maxdeg = 0;
    for (const auto& p : np.points) {
        lo = std::min(lo, y_of(p.value));
        hi = std::max(hi, y_of(p.value));
        maxdeg = std::max(maxdeg, p.deg);
    }
    const int cell = 40, margin = 30;
    const long long w = 2 * margin + static_cast<long long>(maxdeg) * cell;
    const long long h = 2 * margin + (hi - lo) * cell;
    auto px = [&](int deg) { return margin + static_cast<long long>(deg) * cell; };
    auto py = [&](const Rational& v) { return margin + (hi - y_of(v)) * cell; };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    if (np.hull.size() > 1) {
        out << "  <path d=\"";
        for (std::size_t i = 0; i < np.hull.size(); ++i)
            out << (i ? " L " : "M ") << px(np.hull[i].deg) << " " << py(np.hull[i].value);
        out << "\" fill=\"none\" stroke=\"black\"/>\n";
    }
    for (const auto& p : np.points)
        out << "  <circle cx=\"" << px(p.deg) << "\" cy=\"" << py(p.value) << "\" r=\"4\"/>\n";
    for (std::size_t i = 0; i < np.edges.size(); ++i) {
        const auto& a = np.hull[i];
        const auto& b = np.hull[i + 1];
        out << "  <text x=\"" << (px(a.deg) + px(b.deg)) / 2 << "\" y=\"" << (py(a.value) + py(b.value)) / 2 - 6
            << "\" font-size=\"12\">" << to_string(np.edges[i].slope) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace idyll
