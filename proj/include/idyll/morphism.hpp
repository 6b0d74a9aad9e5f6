#pragma once

// Morphisms out of Q: sign, p-adic valuation, reduction into quotient hyperfields.

#include <cstdint>

#include "idyll/algebra.hpp"
#include "idyll/extension.hpp"

namespace idyll {

inline SignElem sign_of_rational(const Rational& q) { return {q > 0 ? 1 : (q < 0 ? -1 : 0)}; }

inline long long padic_order(Integer n, std::uint32_t p) {
    long long k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

/// v_p(q) as a rank-1 value; v_p(0) = inf.
inline OagValue padic_valuation(const Rational& q, std::uint32_t p) {
    if (!is_prime(p)) throw structural_error(std::to_string(p) + " is not prime");
    if (q == 0) return OagValue::infinity();
    Integer num = abs(numerator(q)), den = denominator(q);
    return OagValue::scalar(make_rational(padic_order(num, p) - padic_order(den, p)));
}

/// q -> sign(q) t^{v_p(q)} into S[Q].
inline ExtElem<SignElem> trop_real_of(const Rational& q, std::uint32_t p) {
    if (q == 0) return {};
    return {true, sign_of_rational(q), padic_valuation(q, p)};
}

/// q -> t^{v_p(q)} into K[Q].
inline ExtElem<KrasnerElem> trop_of(const Rational& q, std::uint32_t p) { return from_oag(padic_valuation(q, p)); }

/// Reduction Z -> GF(p) -> GF(p)/G for integers (or p-integral rationals).
inline Residue reduce_mod(const Rational& q, const QuotientHyperfield& h) {
    Integer p = h.prime();
    Integer den = denominator(q) % p;
    if (den == 0) throw precondition_error("denominator divisible by p");
    Integer num = ((numerator(q) % p) + p) % p;
    auto inv = detail::pow_mod(static_cast<std::uint64_t>(den), h.prime() - 2, h.prime());
    return h.project(static_cast<std::uint32_t>(static_cast<std::uint64_t>(num) * inv % h.prime()));
}

} // namespace idyll
