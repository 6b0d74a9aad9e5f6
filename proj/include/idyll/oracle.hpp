#pragma once

// Brute-force reference implementations. None of these use sum sets, closed
// forms or evaluation shortcuts; they enumerate candidates and test the
// defining null relations directly.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "idyll/extension.hpp"
#include "idyll/poly.hpp"

namespace idyll {

struct OracleReport {
    std::string instance;
    long long oracle_value = 0;
    long long engine_value = 0;
    bool agree = true;
};

namespace detail {

inline void guard_size(std::size_t carrier, int length, double limit) {
    double total = 1;
    for (int i = 0; i < length; ++i) total *= static_cast<double>(carrier);
    if (total > limit) throw resource_error("oracle enumeration too large");
}

} // namespace detail

/// Every g of degree < deg f with f ≼ (x - a) g, by enumerating all coefficient vectors.
template <EnumerableIdyll I>
std::vector<Polynomial<typename I::element>> exhaustive_quotients(const I& b, const Polynomial<typename I::element>& f,
                                                                  const typename I::element& a, int max_deg = 7) {
    using E = typename I::element;
    const int n = f.degree();
    if (n > max_deg) throw resource_error("oracle degree guard: deg f = " + std::to_string(n));
    std::vector<Polynomial<E>> out;
    if (n < 1) return out;
    auto elems = b.elements();
    detail::guard_size(elems.size(), n, 5e6);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<E> d;
        for (auto i : idx) d.push_back(elems[i]);
        Polynomial<E> g(std::move(d));
        if (factor_check(b, f, a, g)) out.push_back(g);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == elems.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

/// Multiplicity by literal application of the recursive definition.
template <EnumerableIdyll I>
int exhaustive_multiplicity(const I& b, const Polynomial<typename I::element>& f, const typename I::element& a,
                            int max_deg = 7) {
    using P = Polynomial<typename I::element>;
    if (f.is_zero()) throw precondition_error("the zero polynomial has infinite multiplicity");
    std::map<P, int> memo;
    auto rec = [&](auto& self, const P& p) -> int {
        if (auto it = memo.find(p); it != memo.end()) return it->second;
        int best = 0;
        for (const auto& g : exhaustive_quotients(b, p, a, max_deg)) best = std::max(best, 1 + self(self, g));
        memo[p] = best;
        return best;
    };
    return rec(rec, f);
}

/// All a admitting at least one factorization.
template <EnumerableIdyll I>
std::vector<typename I::element> exhaustive_root_set(const I& b, const Polynomial<typename I::element>& f,
                                                     int max_deg = 7) {
    std::vector<typename I::element> out;
    for (const auto& a : b.elements())
        if (!exhaustive_quotients(b, f, a, max_deg).empty()) out.push_back(a);
    return out;
}

// ---------------------------------------------------------------------------
// Extensions: enumeration on a finite grid of levels.

struct GridVerdict {
    int count = 0;
    /// True when the count reaches the upper bound passed in, so the grid provably sufficed.
    bool conclusive = false;
};

/// Multiplicity over Extension<B> with quotient coefficients restricted to
/// u^g with g in {v(c_j) + m v(a) : |m| <= deg f + 1}. Each relation is checked
/// with the extension null test as soon as both of its quotient coefficients are
/// fixed. The result is a lower bound; it is conclusive iff it meets `upper`.
template <EnumerableIdyll B>
GridVerdict bounded_extension_oracle(const Extension<B>& e, const Polynomial<typename Extension<B>::element>& f,
                                     const typename Extension<B>::element& a, int upper,
                                     std::size_t node_cap = 2000000) {
    using E = typename Extension<B>::element;
    using P = Polynomial<E>;
    if (f.is_zero() || !a.nonzero) throw precondition_error("grid oracle needs f != 0 and a != 0");
    std::map<P, int> memo;
    std::size_t nodes = 0;
    auto units = e.base().elements();

    auto quotients = [&](const P& p) {
        std::vector<P> out;
        const int n = p.degree();
        if (n < 1) return out;
        std::set<OagValue> levels;
        for (int j : p.support())
            for (int m = -(n + 1); m <= n + 1; ++m)
                levels.insert(e.valuation(p.coeff(j)) + static_cast<long long>(m) * a.level);
        std::vector<E> grid{e.zero()};
        for (const auto& lv : levels)
            for (const auto& u : units)
                if (!is_zero_element(u)) grid.push_back(e.make(u, lv));
        std::vector<E> d(static_cast<std::size_t>(n));
        auto rel = [&](int i) {
            E lo = i >= 1 ? d[i - 1] : e.zero();
            E hi = i < n ? d[i] : e.zero();
            return e.is_null(FormalSum<E>{p.coeff(i), e.mul(e.epsilon(), lo), e.mul(a, hi)});
        };
        // Fill d[n-1], d[n-2], ... and check relation i+1 once d[i] is fixed.
        auto rec = [&](auto& self, int i) -> void {
            if (++nodes > node_cap) throw resource_error("grid oracle exceeded its node budget");
            if (i < 0) {
                if (rel(0)) out.push_back(P(d));
                return;
            }
            for (const auto& c : grid) {
                d[i] = c;
                if (rel(i + 1)) self(self, i - 1);
            }
        };
        rec(rec, n - 1);
        return out;
    };

    auto mult = [&](auto& self, const P& p) -> int {
        if (auto it = memo.find(p); it != memo.end()) return it->second;
        int best = 0;
        for (const auto& g : quotients(p)) {
            best = std::max(best, 1 + self(self, g));
            if (best >= upper) break;
        }
        memo[p] = best;
        return best;
    };
    GridVerdict v;
    v.count = mult(mult, f);
    v.conclusive = v.count == upper;
    return v;
}

// ---------------------------------------------------------------------------
// Phase oracle on twelfth roots of unity, with exact arithmetic in Q(sqrt 3).

struct QSqrt3 {
    Rational a, b; // a + b sqrt(3)

    friend QSqrt3 operator+(const QSqrt3& x, const QSqrt3& y) { return {x.a + y.a, x.b + y.b}; }
    friend QSqrt3 operator*(const QSqrt3& x, const QSqrt3& y) {
        return {x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a};
    }

    int sign() const {
        int sa = a > 0 ? 1 : (a < 0 ? -1 : 0);
        int sb = b > 0 ? 1 : (b < 0 ? -1 : 0);
        if (sa == 0) return sb;
        if (sb == 0 || sa == sb) return sa;
        // Opposite signs: compare a^2 with 3 b^2.
        Rational l = a * a, r = 3 * b * b;
        if (l == r) return 0;
        return l > r ? sa : sb;
    }
};

/// (cos, sin) of k * 30 degrees.
inline std::pair<QSqrt3, QSqrt3> twelfth_root(int k) {
    static const QSqrt3 table[12] = {
        {1, 0}, {0, Rational(1, 2)}, {Rational(1, 2), 0}, {0, 0}, {Rational(-1, 2), 0}, {0, Rational(-1, 2)},
        {-1, 0}, {0, Rational(-1, 2)}, {Rational(-1, 2), 0}, {0, 0}, {Rational(1, 2), 0}, {0, Rational(1, 2)},
    };
    k = ((k % 12) + 12) % 12;
    return {table[k], table[(k + 9) % 12]};
}

/// 0 lies in the relative interior of conv{e^{2 pi i k/12}} iff no direction w has
/// w.p <= 0 for all points with strict inequality somewhere. Directions along or
/// orthogonal to the points suffice in the plane.
inline bool phase_null_oracle_12(const std::vector<int>& ks) {
    if (ks.empty()) return true;
    std::vector<std::pair<QSqrt3, QSqrt3>> pts;
    for (int k : ks) pts.push_back(twelfth_root(k));
    QSqrt3 minus_one{-1, 0};
    std::vector<std::pair<QSqrt3, QSqrt3>> dirs;
    for (const auto& [x, y] : pts) {
        dirs.push_back({x, y});
        dirs.push_back({x * minus_one, y * minus_one});
        dirs.push_back({y * minus_one, x});
        dirs.push_back({y, x * minus_one});
    }
    for (const auto& [wx, wy] : dirs) {
        bool all_nonpos = true, some_neg = false;
        for (const auto& [x, y] : pts) {
            int s = (wx * x + wy * y).sign();
            if (s > 0) all_nonpos = false;
            if (s < 0) some_neg = true;
        }
        if (all_nonpos && some_neg) return false;
    }
    return true;
}

} // namespace idyll
