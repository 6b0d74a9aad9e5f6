#pragma once

// Explicit division rules: Krasner, the two sign squishes, and the tropical staircase.

#include <vector>

#include "idyll/algebra.hpp"
#include "idyll/poly.hpp"

namespace idyll {

namespace detail {

template <class E>
Polynomial<E> shift_up(const Polynomial<E>& f, int k) {
    std::vector<E> c(static_cast<std::size_t>(k));
    c.insert(c.end(), f.coeffs().begin(), f.coeffs().end());
    return Polynomial<E>(std::move(c));
}

} // namespace detail

/// x^m + ... + x^n  ≼ (x + 1)(x^m + ... + x^{n-1}) over K.
inline Polynomial<KrasnerElem> krasner_quotient(const Polynomial<KrasnerElem>& f) {
    const int m = f.min_degree(), n = f.degree();
    if (m < 0 || m == n) throw precondition_error("Krasner quotient needs at least two terms");
    std::vector<KrasnerElem> c(static_cast<std::size_t>(n));
    for (int i = m; i < n; ++i) c[i] = KrasnerElem{true};
    return Polynomial<KrasnerElem>(std::move(c));
}

/// Quotient by (x + 1) over S: squish the first pair of equal neighbours.
/// Needs no zeros between the lowest and highest term.
inline Polynomial<SignElem> sign_negative_root_quotient(const Polynomial<SignElem>& f) {
    const int m = f.min_degree();
    if (m < 0) throw precondition_error("zero polynomial");
    auto s = detail::shift_down(f, m).coeffs();
    for (const auto& x : s)
        if (x.value == 0) throw precondition_error("intermediate zero coefficient");
    const int n = static_cast<int>(s.size()) - 1;
    int i0 = -1;
    for (int i = 0; i < n; ++i)
        if (s[i] == s[i + 1]) {
            i0 = i;
            break;
        }
    if (i0 < 0) throw precondition_error("-1 is not a root");
    std::vector<SignElem> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[i] = i <= i0 ? s[i] : s[i + 1];
    return detail::shift_up(Polynomial<SignElem>(std::move(t)), m);
}

/// Quotient by (x - 1) over S with one sign change fewer. Before the first
/// sign change every coefficient is -s_0; after it, each coefficient copies the
/// next nonzero coefficient of f.
inline Polynomial<SignElem> sign_positive_root_quotient(const Polynomial<SignElem>& f) {
    const int m = f.min_degree();
    if (m < 0) throw precondition_error("zero polynomial");
    auto s = detail::shift_down(f, m).coeffs();
    const int n = static_cast<int>(s.size()) - 1;
    int k = -1;
    for (int i = 1; i <= n; ++i)
        if (s[i].value != 0 && s[i] != s[0]) {
            k = i;
            break;
        }
    if (k < 0) throw precondition_error("1 is not a root");
    std::vector<SignElem> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (i < k) {
            t[i] = SignElem{-s[0].value};
        } else {
            int j = i + 1;
            while (s[j].value == 0) ++j;
            t[i] = s[j];
        }
    }
    return detail::shift_up(Polynomial<SignElem>(std::move(t)), m);
}

/// Quotient of a rank-1 tropical polynomial by (x - a): substitute x -> a x,
/// take min-staircases on both sides of the minimal terms, substitute back.
inline Polynomial<OagValue> tropical_quotient(const Polynomial<OagValue>& f, const OagValue& a) {
    if (a.is_infinite()) throw precondition_error("tropical quotient at zero");
    const int n = f.degree();
    std::vector<OagValue> F(static_cast<std::size_t>(n + 1));
    OagValue lo = OagValue::infinity();
    for (int i = 0; i <= n; ++i) {
        F[i] = f.coeff(i) + static_cast<long long>(i) * a;
        lo = std::min(lo, F[i]);
    }
    int i0 = -1, i1 = -1;
    for (int i = 0; i <= n; ++i)
        if (F[i] == lo) {
            if (i0 < 0) i0 = i;
            i1 = i;
        }
    if (i0 == i1) throw precondition_error("a is not a root");
    std::vector<OagValue> d(static_cast<std::size_t>(n));
    OagValue prev = OagValue::infinity();
    for (int i = 0; i < i0; ++i) prev = d[i] = std::min(prev, F[i]);
    for (int i = i0; i < i1; ++i) d[i] = lo;
    for (int i = i1; i < n; ++i) {
        OagValue best = OagValue::infinity();
        for (int k = i + 1; k <= n; ++k) best = std::min(best, F[k]);
        d[i] = best;
    }
    for (int i = 0; i < n; ++i) d[i] = d[i] - static_cast<long long>(i + 1) * a;
    return Polynomial<OagValue>(std::move(d));
}

} // namespace idyll
