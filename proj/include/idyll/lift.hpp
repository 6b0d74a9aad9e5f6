#pragma once

// Lifting a factorization of an initial form to the whole polynomial.
//
// After normalizing to F(x) = c^{-1} f(a x), the minimal coefficients of F sit
// at level 0 on degrees i0..i1. The quotient G of F by (x - 1) keeps the given
// g on the middle degrees; every zero coefficient at or below i1 - 1 is filled
// bottom-up from D_k ∈ D_{k-1} ⊞ eps C_k, and the degrees from i1 up are filled
// top-down from D_{i-1} ∈ C_i ⊞ D_i. Filled coefficients always have positive
// valuation, so the initial form of the lift is g again.

#include <optional>
#include <string>
#include <vector>

#include "idyll/extension.hpp"
#include "idyll/mult.hpp"
#include "idyll/newton.hpp"
#include "idyll/poly.hpp"

namespace idyll {

template <class U>
struct LiftResult {
    Polynomial<ExtElem<U>> quotient;
    /// Representative to normalize the next initial form with (c * a^{-1}).
    ExtElem<U> next_rep;
};

/// In_a f normalized by an explicit representative of its level.
template <Idyll B>
Polynomial<typename B::element> normalized_initial_form(const Extension<B>& e,
                                                        const Polynomial<typename Extension<B>::element>& f,
                                                        const typename Extension<B>::element& a,
                                                        const typename Extension<B>::element& rep) {
    auto lf = initial_form_at(e, f, a);
    if (!rep.nonzero || rep.level != lf.level) throw precondition_error("representative is not at the initial level");
    auto ri = e.inv(rep);
    return map_coeffs(lf.form, [&](const typename Extension<B>::element& t) { return e.mul(t, ri).unit; });
}

namespace detail {

/// Zero when available, otherwise the first element of positive valuation.
template <Idyll B>
typename Extension<B>::element pick_positive(const Extension<B>& e, const SumSet<typename Extension<B>::element>& s,
                                             const OagValue& zero_level) {
    if (s.tail_above) return e.zero();
    for (const auto& c : s.core)
        if (!c.nonzero) return c;
    for (const auto& c : s.core)
        if (zero_level < c.level) return c;
    throw verification_error("no positive-valuation choice while lifting");
}

} // namespace detail

/// Given f ≼ ... with c^{-1} In_a f ≼ (x - 1) g over the base, returns g~ with
/// f ≼ (x - a) g~ and (c a^{-1})^{-1} In_a g~ = g. `rep` defaults to 1^{g0}.
template <Idyll B>
LiftResult<typename B::element> lift_factorization(const Extension<B>& e,
                                                   const Polynomial<typename Extension<B>::element>& f,
                                                   const typename Extension<B>::element& a,
                                                   const Polynomial<typename B::element>& g,
                                                   std::optional<typename Extension<B>::element> rep = std::nullopt) {
    using E = typename Extension<B>::element;
    using U = typename B::element;
    const auto& base = e.base();
    if (!base.is_whole()) throw precondition_error("lifting needs a whole base, got " + base.name());
    if (!a.nonzero) throw precondition_error("lifting at zero");
    auto lf = initial_form_at(e, f, a);
    E c = rep ? *rep : e.representative(lf.level);
    Polynomial<U> h = normalized_initial_form(e, f, a, c);
    if (!factor_check(base, h, base.one(), g))
        throw precondition_error("g is not a quotient of the normalized initial form by (x - 1)");

    // F(x) = c^{-1} f(a x).
    const int n = f.degree();
    E ci = e.inv(c);
    std::vector<E> C(static_cast<std::size_t>(n + 1));
    E power = e.one();
    for (int i = 0; i <= n; ++i) {
        C[i] = e.mul(e.mul(f.coeff(i), power), ci);
        power = e.mul(power, a);
    }
    const OagValue zero_level = OagValue::zero(e.rank());
    auto supp = h.support();
    const int i1 = supp.back();

    std::vector<E> D(static_cast<std::size_t>(std::max(n, 0)));
    for (int k = 0; k < i1; ++k) {
        E prev = k > 0 ? D[k - 1] : e.zero();
        if (!is_zero_element(g.coeff(k))) {
            D[k] = e.embed(g.coeff(k));
        } else {
            D[k] = detail::pick_positive(e, e.sum_set(prev, e.mul(e.epsilon(), C[k])), zero_level);
        }
    }
    E above = e.zero();
    for (int i = n; i > i1; --i) {
        D[i - 1] = detail::pick_positive(e, e.sum_set(C[i], above), zero_level);
        above = D[i - 1];
    }

    // Back to f: d_i = c a^{-(i+1)} D_i.
    E ai = e.inv(a);
    std::vector<E> d(D.size());
    E scale = e.mul(c, ai);
    for (std::size_t i = 0; i < D.size(); ++i) {
        d[i] = e.mul(D[i], scale);
        scale = e.mul(scale, ai);
    }
    LiftResult<U> out{Polynomial<E>(std::move(d)), e.mul(c, ai)};
    if (!factor_check(e, f, a, out.quotient))
        throw verification_error("lifted quotient fails the factorization check");
    if (normalized_initial_form(e, out.quotient, a, out.next_rep) != g)
        throw verification_error("lifted quotient has the wrong initial form");
    return out;
}

/// Lifts a maximal factorization chain of the initial form, one link at a time.
/// Returns the chain over the extension; its length is the base multiplicity.
template <Idyll B>
FactorizationChain<typename Extension<B>::element> lift_chain(const Extension<B>& e,
                                                              const Polynomial<typename Extension<B>::element>& f,
                                                              const typename Extension<B>::element& a,
                                                              SearchOptions opt = {}) {
    using E = typename Extension<B>::element;
    E c = e.representative(initial_form_at(e, f, a).level);
    auto h = normalized_initial_form(e, f, a, c);
    auto base_chain = multiplicity_search(e.base(), h, e.base().one(), opt);
    FactorizationChain<E> out{a, {}};
    Polynomial<E> cur = f;
    for (const auto& g : base_chain.chain.quotients) {
        auto r = lift_factorization(e, cur, a, g, c);
        out.quotients.push_back(r.quotient);
        cur = r.quotient;
        c = r.next_rep;
    }
    return out;
}

} // namespace idyll
