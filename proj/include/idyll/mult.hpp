#pragma once

// Roots, quotients and multiplicities.
//
// The search engine enumerates quotients top-down through sum sets. Over valued
// idylls a sum set can contain every element above some level; those tails are
// instantiated on the finite grid of levels v(c_j) + (j - k - 1) v(a) at quotient
// index k, which contains every quotient produced by lifting initial-form
// factorizations.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "idyll/extension.hpp"
#include "idyll/newton.hpp"
#include "idyll/poly.hpp"

namespace idyll {

inline std::size_t default_search_cap() {
    if (const char* env = std::getenv("IDYLL_SEARCH_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 100000;
}

struct SearchOptions {
    std::size_t node_cap = default_search_cap();
    /// On overflow, return the best chain found so far (flagged) instead of throwing.
    bool truncate = false;
};

template <class E>
struct FactorizationChain {
    E root;
    std::vector<Polynomial<E>> quotients;
};

template <class E>
struct MultResult {
    int count = 0;
    FactorizationChain<E> chain;
    bool truncated = false;
    std::size_t nodes = 0;
};

/// Checks that every link of the chain is a valid factorization.
template <Idyll I>
bool verify_chain(const I& b, const Polynomial<typename I::element>& f,
                  const FactorizationChain<typename I::element>& chain) {
    const Polynomial<typename I::element>* prev = &f;
    for (const auto& g : chain.quotients) {
        if (!factor_check(b, *prev, chain.root, g)) return false;
        prev = &g;
    }
    return true;
}

namespace detail {

struct Budget {
    std::size_t cap;
    bool truncate;
    std::size_t used = 0;
    bool exhausted = false;

    /// False once the budget is spent in truncate mode.
    bool tick() {
        if (exhausted) return false;
        if (++used > cap) {
            if (!truncate) throw resource_error("multiplicity search exceeded " + std::to_string(cap) + " nodes");
            exhausted = true;
            return false;
        }
        return true;
    }
};

/// Elements whose valuation exceeds `above`, on the lifting grid for quotient index k.
template <Idyll I>
std::vector<typename I::element> tail_candidates(const I& b, const Polynomial<typename I::element>& f,
                                                 const typename I::element& a, int k, const OagValue& above) {
    if constexpr (ValuedIdyll<I>) {
        OagValue g = b.valuation(a);
        std::set<OagValue> levels;
        for (int j : f.support()) {
            OagValue lv = b.valuation(f.coeff(j)) + static_cast<long long>(j - k - 1) * g;
            if (above < lv) levels.insert(lv);
        }
        std::vector<typename I::element> out;
        for (const auto& lv : levels)
            for (const auto& u : b.units_at(lv)) out.push_back(u);
        return out;
    } else {
        (void)b, (void)f, (void)a, (void)k, (void)above;
        throw unsupported_operation("sum set with an infinite tail over " + b.name());
    }
}

template <Idyll I>
std::vector<typename I::element> expand(const I& b, const SumSet<typename I::element>& s,
                                        const Polynomial<typename I::element>& f, const typename I::element& a,
                                        int k) {
    std::vector<typename I::element> out = s.core;
    if (s.tail_above) {
        auto extra = tail_candidates(b, f, a, k, *s.tail_above);
        out.insert(out.end(), extra.begin(), extra.end());
    }
    return out;
}

} // namespace detail

/// Enumerates every quotient g with f ≼ (x - a) g (tails on the lifting grid).
/// `fn` returns false to stop the enumeration.
template <Idyll I, class Fn>
void for_each_quotient(const I& b, const Polynomial<typename I::element>& f, const typename I::element& a,
                       detail::Budget& budget, Fn&& fn) {
    using E = typename I::element;
    const int n = f.degree();
    if (n < 1) return;
    std::vector<E> d(static_cast<std::size_t>(n));
    bool stop = false;
    auto rec = [&](auto& self, int i) -> void {
        // d[i] is set; choose d[i-1].
        if (stop || !budget.tick()) {
            stop = true;
            return;
        }
        if (i == 0) {
            if (b.is_null(FormalSum<E>{f.coeff(0), b.mul(a, d[0])}))
                if (!fn(Polynomial<E>(d))) stop = true;
            return;
        }
        for (const auto& c : detail::expand(b, sum_set(b, f.coeff(i), b.mul(a, d[i])), f, a, i - 1)) {
            d[i - 1] = c;
            self(self, i - 1);
            if (stop) return;
        }
    };
    for (const auto& top : detail::expand(b, sum_set(b, f.coeff(n), b.zero()), f, a, n - 1)) {
        d[n - 1] = top;
        rec(rec, n - 1);
        if (stop) return;
    }
}

/// All quotients of f by (x - a), deduplicated and sorted.
template <Idyll I>
std::vector<Polynomial<typename I::element>> divide_once(const I& b, const Polynomial<typename I::element>& f,
                                                         const typename I::element& a, SearchOptions opt = {}) {
    detail::Budget budget{opt.node_cap, opt.truncate};
    std::set<Polynomial<typename I::element>> out;
    for_each_quotient(b, f, a, budget, [&](const Polynomial<typename I::element>& g) {
        out.insert(g);
        return true;
    });
    return {out.begin(), out.end()};
}

template <Idyll I>
bool is_root(const I& b, const Polynomial<typename I::element>& f, const typename I::element& a) {
    if (is_zero_element(a)) return is_zero_element(f.coeff(0));
    if (b.is_pasture()) return b.is_null(eval_sum(b, f, a));
    detail::Budget budget{default_search_cap(), false};
    bool found = false;
    for_each_quotient(b, f, a, budget, [&](const auto&) {
        found = true;
        return false;
    });
    return found;
}

namespace detail {

template <Idyll I>
class MultSearch {
public:
    using E = typename I::element;
    using P = Polynomial<E>;

    MultSearch(const I& b, E a, SearchOptions opt) : b_(b), a_(std::move(a)), budget_{opt.node_cap, opt.truncate} {}

    int run(const P& f) {
        if (auto it = memo_.find(f); it != memo_.end()) return it->second.first;
        int best = 0;
        std::optional<P> best_child;
        bool pruned = b_.is_pasture() && !b_.is_null(eval_sum(b_, f, a_));
        if (!pruned) {
            for_each_quotient(b_, f, a_, budget_, [&](const P& g) {
                int m = 1 + run(g);
                if (m > best) {
                    best = m;
                    best_child = g;
                }
                // A chain cannot be longer than the degree.
                return best < f.degree() && !budget_.exhausted;
            });
        }
        if (!budget_.exhausted) memo_[f] = {best, best_child};
        else partial_[f] = {best, best_child};
        return best;
    }

    FactorizationChain<E> chain(const P& f) const {
        FactorizationChain<E> out{a_, {}};
        P cur = f;
        while (true) {
            const std::pair<int, std::optional<P>>* entry = nullptr;
            if (auto it = memo_.find(cur); it != memo_.end()) entry = &it->second;
            else if (auto jt = partial_.find(cur); jt != partial_.end()) entry = &jt->second;
            if (!entry || !entry->second) break;
            cur = *entry->second;
            out.quotients.push_back(cur);
        }
        return out;
    }

    const Budget& budget() const { return budget_; }

private:
    const I& b_;
    E a_;
    Budget budget_;
    std::map<P, std::pair<int, std::optional<P>>> memo_;
    std::map<P, std::pair<int, std::optional<P>>> partial_;
};

} // namespace detail

/// Multiplicity of a as a root of f by exhaustive quotient search, with a witness chain.
template <Idyll I>
MultResult<typename I::element> multiplicity_search(const I& b, const Polynomial<typename I::element>& f,
                                                    const typename I::element& a, SearchOptions opt = {}) {
    using E = typename I::element;
    if (f.is_zero()) throw precondition_error("the zero polynomial has infinite multiplicity");
    require_member(b, a);
    MultResult<E> out;
    out.chain.root = a;
    if (is_zero_element(a)) {
        out.count = f.min_degree();
        for (int j = 1; j <= out.count; ++j) out.chain.quotients.push_back(detail::shift_down(f, j));
        return out;
    }
    detail::MultSearch<I> s(b, a, opt);
    out.count = s.run(f);
    out.chain = s.chain(f);
    out.chain.quotients.resize(static_cast<std::size_t>(out.count));
    out.truncated = s.budget().exhausted;
    out.nodes = s.budget().used;
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms.

template <class I>
struct is_extension : std::false_type {};
template <class B>
struct is_extension<Extension<B>> : std::true_type {};

template <class I>
constexpr bool has_closed_form() {
    if constexpr (std::is_same_v<I, KrasnerIdyll> || std::is_same_v<I, SignIdyll> || std::is_same_v<I, OagIdyll>)
        return true;
    else if constexpr (is_extension<I>::value)
        return supports_sum_sets<typename I::base_type>();
    else
        return false;
}

/// Sign changes in a sequence of signs, zeros skipped.
inline int sign_changes(const std::vector<SignElem>& s) {
    int prev = 0, changes = 0;
    for (const auto& x : s) {
        if (x.value == 0) continue;
        if (prev != 0 && prev != x.value) ++changes;
        prev = x.value;
    }
    return changes;
}

template <Idyll I>
int mult_closed_form(const I& b, const Polynomial<typename I::element>& f, const typename I::element& a);

namespace detail {

/// Base multiplicity at 1: closed form when the base has one, search otherwise.
template <Idyll B>
int base_mult_at_one(const B& base, const Polynomial<typename B::element>& h) {
    if constexpr (has_closed_form<B>())
        return mult_closed_form(base, h, base.one());
    else
        return multiplicity_search(base, h, base.one()).count;
}

/// The normalized initial form c^{-1} In_a f over the base. Split extensions go
/// through the coordinate-by-coordinate recursion and the substitution x -> u x.
template <Idyll B>
Polynomial<typename B::element> normalized_initial_form(const Extension<B>& e,
                                                        const Polynomial<typename Extension<B>::element>& f,
                                                        const typename Extension<B>::element& a) {
    if (e.is_split()) return monomial_substitute(e.base(), initial_form_recursive(f, a.level), a.unit);
    return initial_form_at(e, f, a).normalized;
}

} // namespace detail

/// Closed-form multiplicities: Krasner width, Descartes sign changes, Newton
/// polygon edge widths, and the initial-form reduction for extensions.
template <Idyll I>
int mult_closed_form(const I& b, const Polynomial<typename I::element>& f, const typename I::element& a) {
    if (f.is_zero()) throw precondition_error("the zero polynomial has infinite multiplicity");
    require_member(b, a);
    if (is_zero_element(a)) return f.min_degree();
    if constexpr (std::is_same_v<I, KrasnerIdyll>) {
        return f.degree() - f.min_degree();
    } else if constexpr (std::is_same_v<I, SignIdyll>) {
        return sign_changes(monomial_substitute(b, f, a).coeffs());
    } else if constexpr (std::is_same_v<I, OagIdyll>) {
        if (b.rank() == 1) {
            std::vector<NewtonPoint> pts;
            for (int i : f.support()) pts.push_back({i, f.coeff(i)[0]});
            return newton_polygon(pts).edge_with_slope(-a[0]).width();
        }
        TropicalIdyll t = make_trop(b.rank());
        return mult_closed_form(t, map_coeffs(f, [](const OagValue& v) { return from_oag(v); }), from_oag(a));
    } else if constexpr (has_closed_form<I>()) {
        return detail::base_mult_at_one(b.base(), detail::normalized_initial_form(b, f, a));
    } else {
        throw unsupported_operation("no closed form for multiplicities over " + b.name());
    }
}

enum class Engine { search, closed, both };

inline Engine parse_engine(std::string_view s) {
    if (s == "search") return Engine::search;
    if (s == "closed") return Engine::closed;
    if (s == "both") return Engine::both;
    throw parse_error("unknown engine '" + std::string(s) + "'", 0);
}

/// Multiplicity through the chosen engine; `both` throws verification_error on disagreement.
template <Idyll I>
MultResult<typename I::element> multiplicity(const I& b, const Polynomial<typename I::element>& f,
                                             const typename I::element& a, Engine engine = Engine::search,
                                             SearchOptions opt = {}) {
    if (engine == Engine::closed) {
        MultResult<typename I::element> r;
        r.count = mult_closed_form(b, f, a);
        r.chain.root = a;
        return r;
    }
    auto r = multiplicity_search(b, f, a, opt);
    if (engine == Engine::both) {
        int closed = mult_closed_form(b, f, a);
        if (r.truncated) {
            if (r.count > closed)
                throw verification_error("truncated search found " + std::to_string(r.count) +
                                         " > closed form " + std::to_string(closed));
        } else if (closed != r.count) {
            throw verification_error("search gives " + std::to_string(r.count) + ", closed form gives " +
                                     std::to_string(closed));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Root candidates and the degree bound.

/// Levels u^g can take as nonzero roots: one per edge of the Newton polygon,
/// recursively through every coordinate.
inline std::vector<OagValue> candidate_levels(const std::vector<std::pair<int, OagValue>>& pts) {
    if (pts.empty()) return {};
    std::size_t rank = pts.front().second.rank();
    if (rank == 0) return {OagValue::zero(0)};
    std::vector<NewtonPoint> heads;
    for (const auto& [i, v] : pts) heads.push_back({i, v[0]});
    std::vector<OagValue> out;
    for (const auto& edge : newton_polygon(heads).edges) {
        Rational w = -edge.slope;
        auto on = argmin_degrees(heads, w);
        std::vector<std::pair<int, OagValue>> sub;
        for (const auto& [i, v] : pts)
            if (std::find(on.begin(), on.end(), i) != on.end()) sub.push_back({i, project_head(v).tail});
        for (const auto& t : candidate_levels(sub)) out.push_back(prepend_head(w, t));
    }
    return out;
}

template <Idyll I>
std::vector<typename I::element> root_candidates(const I& b, const Polynomial<typename I::element>& f) {
    using E = typename I::element;
    if constexpr (EnumerableIdyll<I>) {
        return b.elements();
    } else if constexpr (ValuedIdyll<I>) {
        std::vector<E> out;
        if (is_zero_element(f.coeff(0))) out.push_back(b.zero());
        std::vector<std::pair<int, OagValue>> pts;
        for (int i : f.support()) pts.push_back({i, b.valuation(f.coeff(i))});
        for (const auto& g : candidate_levels(pts))
            for (const auto& u : b.units_at(g)) out.push_back(u);
        return out;
    } else {
        throw unsupported_operation("no root candidates over " + b.name());
    }
}

template <class E>
struct DegreeBoundReport {
    int total = 0;
    int degree = 0;
    bool pass = true;
    std::vector<std::pair<E, int>> roots; // nonzero multiplicities only
};

template <Idyll I>
DegreeBoundReport<typename I::element> degree_bound_check(const I& b, const Polynomial<typename I::element>& f,
                                                          Engine engine = Engine::closed, SearchOptions opt = {}) {
    DegreeBoundReport<typename I::element> r;
    r.degree = f.degree();
    for (const auto& a : root_candidates(b, f)) {
        int m = multiplicity(b, f, a, engine, opt).count;
        if (m > 0) r.roots.push_back({a, m});
        r.total += m;
    }
    r.pass = r.total <= r.degree;
    return r;
}

} // namespace idyll
