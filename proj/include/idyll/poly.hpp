#pragma once

// Pure univariate polynomials over an idyll, stored as dense coefficient
// vectors (index = degree) with trailing zeros trimmed. A default-constructed
// element is the zero of every idyll in the library.

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "idyll/algebra.hpp"

namespace idyll {

template <class E>
class Polynomial {
public:
    using element = E;

    Polynomial() = default;

    explicit Polynomial(std::vector<E> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// From (degree, coefficient) pairs; a repeated degree violates purity.
    static Polynomial from_terms(const std::vector<std::pair<int, E>>& terms) {
        std::vector<E> c;
        std::vector<bool> seen;
        for (const auto& [deg, coef] : terms) {
            if (deg < 0) throw precondition_error("negative degree");
            auto d = static_cast<std::size_t>(deg);
            if (c.size() <= d) {
                c.resize(d + 1);
                seen.resize(d + 1, false);
            }
            if (seen[d]) throw precondition_error("impure polynomial: degree " + std::to_string(deg) + " repeats");
            seen[d] = true;
            c[d] = coef;
        }
        return Polynomial(std::move(c));
    }

    static Polynomial monomial(int deg, const E& coef) { return from_terms({{deg, coef}}); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    /// Coefficient of x^i, zero outside the stored range.
    E coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return E{};
        return c_[i];
    }

    const std::vector<E>& coeffs() const { return c_; }

    std::vector<int> support() const {
        std::vector<int> out;
        for (int i = 0; i <= degree(); ++i)
            if (!is_zero_element(c_[i])) out.push_back(i);
        return out;
    }

    /// Lowest degree with a nonzero coefficient; -1 for the zero polynomial.
    int min_degree() const {
        for (int i = 0; i <= degree(); ++i)
            if (!is_zero_element(c_[i])) return i;
        return -1;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    friend bool operator<(const Polynomial& a, const Polynomial& b) {
        return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
    }

private:
    void trim() {
        while (!c_.empty() && is_zero_element(c_.back())) c_.pop_back();
    }

    std::vector<E> c_;
};

namespace detail {

/// f / x^k, dropping the k lowest coefficients.
template <class E>
Polynomial<E> shift_down(const Polynomial<E>& f, int k) {
    std::vector<E> c;
    for (int i = k; i <= f.degree(); ++i) c.push_back(f.coeff(i));
    return Polynomial<E>(std::move(c));
}

} // namespace detail

template <class E, class Fn>
auto map_coeffs(const Polynomial<E>& f, Fn&& fn) {
    using R = std::decay_t<decltype(fn(std::declval<const E&>()))>;
    std::vector<R> out;
    for (const auto& c : f.coeffs()) out.push_back(is_zero_element(c) ? R{} : fn(c));
    return Polynomial<R>(std::move(out));
}

/// The formal sum f(a) = sum c_i a^i, not collapsed.
template <Idyll I>
FormalSum<typename I::element> eval_sum(const I& b, const Polynomial<typename I::element>& f,
                                        const typename I::element& a) {
    require_member(b, a);
    FormalSum<typename I::element> out;
    auto power = b.one();
    for (int i = 0; i <= f.degree(); ++i) {
        out.push(b.mul(f.coeff(i), power));
        power = b.mul(power, a);
    }
    return out;
}

/// f(cx): the degree-i coefficient becomes c_i c^i.
template <Idyll I>
Polynomial<typename I::element> monomial_substitute(const I& b, const Polynomial<typename I::element>& f,
                                                    const typename I::element& c) {
    if (is_zero_element(c)) throw precondition_error("monomial substitution needs a unit");
    std::vector<typename I::element> out;
    auto power = b.one();
    for (int i = 0; i <= f.degree(); ++i) {
        out.push_back(b.mul(f.coeff(i), power));
        power = b.mul(power, c);
    }
    return Polynomial<typename I::element>(std::move(out));
}

/// Multiplies every coefficient by a constant.
template <Idyll I>
Polynomial<typename I::element> scale_poly(const I& b, const Polynomial<typename I::element>& f,
                                           const typename I::element& c) {
    std::vector<typename I::element> out;
    for (const auto& x : f.coeffs()) out.push_back(b.mul(x, c));
    return Polynomial<typename I::element>(std::move(out));
}

/// The relation at degree i of f ≼ (x - a) g: c_i + eps d_{i-1} + a d_i is null.
template <Idyll I>
bool factor_relation(const I& b, const typename I::element& c_i, const typename I::element& d_prev,
                     const typename I::element& a, const typename I::element& d_i) {
    return b.is_null(FormalSum<typename I::element>{c_i, b.mul(b.epsilon(), d_prev), b.mul(a, d_i)});
}

/// f ≼ (x - a) g, checked on every degree up to max(deg f, deg g + 1).
template <Idyll I>
bool factor_check(const I& b, const Polynomial<typename I::element>& f, const typename I::element& a,
                  const Polynomial<typename I::element>& g) {
    int top = std::max(f.degree(), g.degree() + 1);
    for (int i = 0; i <= top; ++i)
        if (!factor_relation(b, f.coeff(i), g.coeff(i - 1), a, g.coeff(i))) return false;
    return true;
}

/// `c0 + c1*x^1 + ...`, terms joined by `+` only; `0` for the zero polynomial.
template <Idyll I>
std::string format_poly(const I& b, const Polynomial<typename I::element>& f) {
    std::string out;
    for (int i = 0; i <= f.degree(); ++i) {
        auto c = f.coeff(i);
        if (is_zero_element(c)) continue;
        if (!out.empty()) out += " + ";
        out += b.format(c);
        if (i > 0) out += "*x^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

template <Idyll I>
nlohmann::json poly_to_json(const I& b, const Polynomial<typename I::element>& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (int i : f.support()) terms.push_back({{"deg", i}, {"coef", b.format(f.coeff(i))}});
    return {{"idyll", b.name()}, {"terms", terms}};
}

} // namespace idyll
