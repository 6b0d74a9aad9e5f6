#pragma once

// Idylls: a pointed commutative monoid with group of units, a null-ideal of
// formal sums, and a distinguished weak inverse epsilon of one. Every idyll in
// the catalog is a value type exposing the same member vocabulary so that the
// polynomial and multiplicity algorithms can be written once as templates.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idyll/error.hpp"
#include "idyll/oag.hpp"
#include "idyll/rational.hpp"

namespace idyll {

// ---------------------------------------------------------------------------
// Element types

struct KrasnerElem {
    bool nonzero = false;
    friend auto operator<=>(const KrasnerElem&, const KrasnerElem&) = default;
};

/// -1, 0 or +1. Shared by the sign idyll and the regular partial field.
struct SignElem {
    int value = 0;
    friend auto operator<=>(const SignElem&, const SignElem&) = default;
};

/// e^{2 pi i angle}, angle a fraction of a full turn in [0, 1).
struct PhaseElem {
    bool nonzero = false;
    Rational angle;
    friend bool operator==(const PhaseElem& a, const PhaseElem& b) {
        return a.nonzero == b.nonzero && (!a.nonzero || a.angle == b.angle);
    }
    friend std::strong_ordering operator<=>(const PhaseElem& a, const PhaseElem& b) {
        if (a.nonzero != b.nonzero) return a.nonzero ? std::strong_ordering::greater : std::strong_ordering::less;
        if (!a.nonzero || a.angle == b.angle) return std::strong_ordering::equal;
        return a.angle < b.angle ? std::strong_ordering::less : std::strong_ordering::greater;
    }
};

/// Residue mod p; for quotient hyperfields, the least representative of a coset.
struct Residue {
    std::uint32_t value = 0;
    friend auto operator<=>(const Residue&, const Residue&) = default;
};

/// Index into a user-supplied table; index 0 is zero.
struct TableElem {
    int index = 0;
    friend auto operator<=>(const TableElem&, const TableElem&) = default;
};

inline bool is_zero_element(const KrasnerElem& x) { return !x.nonzero; }
inline bool is_zero_element(const SignElem& x) { return x.value == 0; }
inline bool is_zero_element(const PhaseElem& x) { return !x.nonzero; }
inline bool is_zero_element(const Residue& x) { return x.value == 0; }
inline bool is_zero_element(const TableElem& x) { return x.index == 0; }
inline bool is_zero_element(const Rational& x) { return x == 0; }
inline bool is_zero_element(const OagValue& x) { return x.is_infinite(); }

// ---------------------------------------------------------------------------
// Formal sums

/// An element of N[B•]: a multiset of monoid elements modulo zero.
template <class E>
class FormalSum {
public:
    FormalSum() = default;

    FormalSum(std::initializer_list<E> terms) {
        for (const auto& t : terms) push(t);
    }

    template <class It>
    FormalSum(It first, It last) {
        for (; first != last; ++first) push(*first);
    }

    void push(const E& x) {
        if (!is_zero_element(x)) terms_.push_back(x);
    }

    FormalSum& operator+=(const FormalSum& other) {
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        return *this;
    }

    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }

    const std::vector<E>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    /// Multiset equality.
    friend bool operator==(const FormalSum& a, const FormalSum& b) {
        auto x = a.terms_, y = b.terms_;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    }

private:
    std::vector<E> terms_;
};

/// Multiplies every term of a formal sum by a monoid element.
template <class I>
FormalSum<typename I::element> scale(const I& b, const FormalSum<typename I::element>& s,
                                     const typename I::element& x) {
    FormalSum<typename I::element> out;
    for (const auto& t : s) out.push(b.mul(t, x));
    return out;
}

// ---------------------------------------------------------------------------
// Sum sets

/// {c : a + b - c is null}. `tail_above`, when set, adds every element whose
/// valuation is strictly greater than the stored level.
template <class E>
struct SumSet {
    std::vector<E> core;
    std::optional<OagValue> tail_above;

    bool empty() const { return core.empty() && !tail_above; }

    bool contains_core(const E& x) const { return std::find(core.begin(), core.end(), x) != core.end(); }

    void normalize() {
        std::sort(core.begin(), core.end());
        core.erase(std::unique(core.begin(), core.end()), core.end());
    }
};

// ---------------------------------------------------------------------------
// Concepts

template <class I>
concept Idyll = requires(const I& b, const typename I::element& x, const FormalSum<typename I::element>& s,
                         std::string_view text) {
    typename I::element;
    { b.zero() } -> std::same_as<typename I::element>;
    { b.one() } -> std::same_as<typename I::element>;
    { b.epsilon() } -> std::same_as<typename I::element>;
    { b.mul(x, x) } -> std::same_as<typename I::element>;
    { b.inv(x) } -> std::same_as<typename I::element>;
    { b.is_null(s) } -> std::same_as<bool>;
    { b.contains(x) } -> std::same_as<bool>;
    { b.name() } -> std::convertible_to<std::string>;
    { b.format(x) } -> std::convertible_to<std::string>;
    { b.parse(text) } -> std::same_as<typename I::element>;
    { b.is_whole() } -> std::same_as<bool>;
    { b.is_pasture() } -> std::same_as<bool>;
};

template <class I>
concept EnumerableIdyll = Idyll<I> && requires(const I& b) {
    { b.elements() } -> std::same_as<std::vector<typename I::element>>;
};

template <class I>
concept ClosedSumIdyll = Idyll<I> && requires(const I& b, const typename I::element& x) {
    { b.sum_set(x, x) } -> std::same_as<SumSet<typename I::element>>;
};

/// Idylls carrying a valuation onto their value group (OAG idylls and tropical extensions).
template <class I>
concept ValuedIdyll = ClosedSumIdyll<I> && requires(const I& b, const typename I::element& x, const OagValue& g) {
    { b.valuation(x) } -> std::same_as<OagValue>;
    { b.units_at(g) } -> std::same_as<std::vector<typename I::element>>;
    { b.rank() } -> std::same_as<std::size_t>;
};

template <Idyll I>
bool is_zero(const I&, const typename I::element& x) {
    return is_zero_element(x);
}

template <Idyll I>
void require_member(const I& b, const typename I::element& x) {
    if (!b.contains(x)) throw structural_error("element " + b.format(x) + " does not belong to " + b.name());
}

template <Idyll I>
void require_members(const I& b, const FormalSum<typename I::element>& s) {
    for (const auto& t : s) require_member(b, t);
}

/// Decides membership of s in the null-ideal.
template <Idyll I>
bool is_null(const I& b, const FormalSum<typename I::element>& s) {
    return b.is_null(s);
}

/// The exact set {c : a + b + epsilon*c is null}. Closed forms are used when the
/// idyll provides one; otherwise finite carriers are scanned.
template <Idyll I>
SumSet<typename I::element> sum_set(const I& b, const typename I::element& x, const typename I::element& y) {
    if constexpr (ClosedSumIdyll<I>) {
        return b.sum_set(x, y);
    } else if constexpr (EnumerableIdyll<I>) {
        SumSet<typename I::element> out;
        for (const auto& c : b.elements())
            if (b.is_null(FormalSum<typename I::element>{x, y, b.mul(b.epsilon(), c)})) out.core.push_back(c);
        out.normalize();
        return out;
    } else {
        throw unsupported_operation("sum sets are not available over " + b.name());
    }
}

/// Scan-based sum set, available for every enumerable idyll regardless of closed forms.
template <EnumerableIdyll I>
SumSet<typename I::element> sum_set_by_scan(const I& b, const typename I::element& x,
                                            const typename I::element& y) {
    SumSet<typename I::element> out;
    for (const auto& c : b.elements())
        if (b.is_null(FormalSum<typename I::element>{x, y, b.mul(b.epsilon(), c)})) out.core.push_back(c);
    out.normalize();
    return out;
}

template <Idyll I>
constexpr bool supports_sum_sets() {
    return ClosedSumIdyll<I> || EnumerableIdyll<I>;
}

// ---------------------------------------------------------------------------
// Krasner hyperfield {0, 1}: every sum of two or more ones is null.

class KrasnerIdyll {
public:
    using element = KrasnerElem;

    std::string name() const { return "krasner"; }
    element zero() const { return {false}; }
    element one() const { return {true}; }
    element epsilon() const { return one(); }
    element mul(const element& a, const element& b) const { return {a.nonzero && b.nonzero}; }
    element inv(const element& a) const {
        if (!a.nonzero) throw precondition_error("zero is not invertible");
        return a;
    }
    bool contains(const element&) const { return true; }
    bool is_whole() const { return true; }
    bool is_pasture() const { return true; }

    bool is_null(const FormalSum<element>& s) const { return s.size() != 1; }

    std::vector<element> elements() const { return {zero(), one()}; }

    SumSet<element> sum_set(const element& a, const element& b) const {
        SumSet<element> out;
        if (a.nonzero && b.nonzero)
            out.core = {zero(), one()};
        else
            out.core = {element{a.nonzero || b.nonzero}};
        return out;
    }

    std::string format(const element& a) const { return a.nonzero ? "1" : "0"; }

    element parse(std::string_view text) const {
        if (text == "1" || text == "+1" || text == "+" || text == "-1" || text == "-") return one();
        if (text == "0") return zero();
        throw parse_error("not a Krasner literal: '" + std::string(text) + "'", 0);
    }
};

// ---------------------------------------------------------------------------
// Sign hyperfield R / R_{>0}.

inline SignElem parse_sign_literal(std::string_view text, const std::string& idyll_name) {
    if (text == "1" || text == "+1" || text == "+") return {1};
    if (text == "-1" || text == "-") return {-1};
    if (text == "0") return {0};
    throw parse_error("not a " + idyll_name + " literal: '" + std::string(text) + "'", 0);
}

inline std::string format_sign(const SignElem& a) {
    return a.value == 0 ? "0" : (a.value > 0 ? "1" : "-1");
}

class SignIdyll {
public:
    using element = SignElem;

    std::string name() const { return "sign"; }
    element zero() const { return {0}; }
    element one() const { return {1}; }
    element epsilon() const { return {-1}; }
    element mul(const element& a, const element& b) const { return {a.value * b.value}; }
    element inv(const element& a) const {
        if (a.value == 0) throw precondition_error("zero is not invertible");
        return a;
    }
    bool contains(const element& a) const { return a.value >= -1 && a.value <= 1; }
    bool is_whole() const { return true; }
    bool is_pasture() const { return true; }

    /// Null iff empty, or both signs occur.
    bool is_null(const FormalSum<element>& s) const {
        bool pos = false, neg = false;
        for (const auto& t : s) {
            if (!contains(t)) throw structural_error("foreign element in sign sum");
            (t.value > 0 ? pos : neg) = true;
        }
        return s.empty() || (pos && neg);
    }

    std::vector<element> elements() const { return {{0}, {1}, {-1}}; }

    SumSet<element> sum_set(const element& a, const element& b) const {
        SumSet<element> out;
        if (a.value == 0)
            out.core = {b};
        else if (b.value == 0 || a.value == b.value)
            out.core = {a};
        else
            out.core = {{-1}, {0}, {1}};
        return out;
    }

    std::string format(const element& a) const { return format_sign(a); }
    element parse(std::string_view text) const { return parse_sign_literal(text, name()); }
};

// ---------------------------------------------------------------------------
// Regular partial field F1± = {0, ±1} with the null-ideal generated by 1 + (-1).

class RegularPartialField {
public:
    using element = SignElem;

    std::string name() const { return "f1pm"; }
    element zero() const { return {0}; }
    element one() const { return {1}; }
    element epsilon() const { return {-1}; }
    element mul(const element& a, const element& b) const { return {a.value * b.value}; }
    element inv(const element& a) const {
        if (a.value == 0) throw precondition_error("zero is not invertible");
        return a;
    }
    bool contains(const element& a) const { return a.value >= -1 && a.value <= 1; }
    bool is_whole() const { return false; }
    bool is_pasture() const { return false; }

    /// Null iff the integer sum vanishes.
    bool is_null(const FormalSum<element>& s) const {
        long total = 0;
        for (const auto& t : s) total += t.value;
        return total == 0;
    }

    std::vector<element> elements() const { return {{0}, {1}, {-1}}; }

    std::string format(const element& a) const { return format_sign(a); }
    element parse(std::string_view text) const { return parse_sign_literal(text, name()); }
};

// ---------------------------------------------------------------------------
// Phase hyperfield C / R_{>0}.

namespace detail {

inline Rational reduce_turn(Rational q) {
    // Bring into [0, 1).
    Integer fl = numerator(q) / denominator(q);
    if (q < 0 && Rational(fl) != q) fl -= 1;
    return q - Rational(fl);
}

} // namespace detail

/// Exact relative-interior test for the convex hull of points on the unit circle.
/// Angles are fractions of a turn.
inline bool phases_null(std::vector<Rational> angles) {
    if (angles.empty()) return true;
    for (auto& a : angles) a = detail::reduce_turn(a);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
    if (angles.size() == 1) return false;
    const Rational half(1, 2);
    if (angles.size() == 2 && angles[1] - angles[0] == half) return true;
    // Two-dimensional hull: 0 is interior iff every circular gap is below a half turn.
    Rational max_gap = angles.front() + 1 - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) max_gap = std::max(max_gap, Rational(angles[i] - angles[i - 1]));
    return max_gap < half;
}

class PhaseIdyll {
public:
    using element = PhaseElem;

    std::string name() const { return "phase"; }
    element zero() const { return {}; }
    element one() const { return {true, Rational(0)}; }
    element epsilon() const { return {true, Rational(1, 2)}; }
    element mul(const element& a, const element& b) const {
        if (!a.nonzero || !b.nonzero) return zero();
        return {true, detail::reduce_turn(a.angle + b.angle)};
    }
    element inv(const element& a) const {
        if (!a.nonzero) throw precondition_error("zero is not invertible");
        return {true, detail::reduce_turn(-a.angle)};
    }
    element at(const Rational& turn) const { return {true, detail::reduce_turn(turn)}; }
    bool contains(const element& a) const { return !a.nonzero || (a.angle >= 0 && a.angle < 1); }
    bool is_whole() const { return true; }
    bool is_pasture() const { return true; }

    bool is_null(const FormalSum<element>& s) const {
        std::vector<Rational> angles;
        for (const auto& t : s) {
            if (!contains(t)) throw structural_error("phase angle outside [0,1)");
            angles.push_back(t.angle);
        }
        return phases_null(std::move(angles));
    }

    std::string format(const element& a) const { return a.nonzero ? "@" + to_string(a.angle) : "0"; }

    /// `@q` is the phase at q turns; `1`, `-1` and `0` are accepted as shorthands.
    element parse(std::string_view text) const {
        if (text == "0") return zero();
        if (text == "1" || text == "+1") return one();
        if (text == "-1") return epsilon();
        if (!text.empty() && text.front() == '@') return at(parse_rational(text.substr(1)));
        throw parse_error("not a phase literal: '" + std::string(text) + "'", 0);
    }
};

// ---------------------------------------------------------------------------
// Fields.

class RationalField {
public:
    using element = Rational;

    std::string name() const { return "field:Q"; }
    element zero() const { return Rational(0); }
    element one() const { return Rational(1); }
    element epsilon() const { return Rational(-1); }
    element mul(const element& a, const element& b) const { return a * b; }
    element inv(const element& a) const {
        if (a == 0) throw precondition_error("zero is not invertible");
        return Rational(1) / a;
    }
    bool contains(const element&) const { return true; }
    bool is_whole() const { return true; }
    bool is_pasture() const { return true; }

    bool is_null(const FormalSum<element>& s) const {
        Rational total = 0;
        for (const auto& t : s) total += t;
        return total == 0;
    }

    SumSet<element> sum_set(const element& a, const element& b) const { return {{a + b}, std::nullopt}; }

    std::string format(const element& a) const { return to_string(a); }
    element parse(std::string_view text) const { return parse_rational(text); }
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace detail {

inline std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t r = 1;
    base %= p;
    while (exp) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t parse_residue(std::string_view text, std::uint32_t p) {
    Rational q = parse_rational(text);
    if (denominator(q) != 1) {
        Integer d = denominator(q) % p;
        if (d == 0) throw parse_error("denominator divisible by p", 0);
        Integer n = ((numerator(q) % p) + p) % p;
        auto inv = pow_mod(static_cast<std::uint64_t>(d), p - 2, p);
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) * inv % p);
    }
    Integer n = ((numerator(q) % p) + p) % p;
    return static_cast<std::uint32_t>(n);
}

} // namespace detail

class PrimeField {
public:
    using element = Residue;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p) || p > 65521) throw structural_error("GF(p) requires a prime p below 2^16");
    }

    std::uint32_t prime() const { return p_; }
    std::string name() const { return "field:GF(" + std::to_string(p_) + ")"; }
    element zero() const { return {0}; }
    element one() const { return {1}; }
    element epsilon() const { return {p_ - 1}; }
    element mul(const element& a, const element& b) const {
        return {static_cast<std::uint32_t>(std::uint64_t(a.value) * b.value % p_)};
    }
    element inv(const element& a) const {
        if (a.value == 0) throw precondition_error("zero is not invertible");
        return {detail::pow_mod(a.value, p_ - 2, p_)};
    }
    bool contains(const element& a) const { return a.value < p_; }
    bool is_whole() const { return true; }
    bool is_pasture() const { return true; }

    bool is_null(const FormalSum<element>& s) const {
        std::uint64_t total = 0;
        for (const auto& t : s) {
            if (!contains(t)) throw structural_error("residue out of range");
            total += t.value;
        }
        return total % p_ == 0;
    }

    std::vector<element> elements() const {
        std::vector<element> out;
        for (std::uint32_t i = 0; i < p_; ++i) out.push_back({i});
        return out;
    }

    SumSet<element> sum_set(const element& a, const element& b) const {
        return {{element{static_cast<std::uint32_t>((std::uint64_t(a.value) + b.value) % p_)}}, std::nullopt};
    }

    std::string format(const element& a) const { return std::to_string(a.value); }
    element parse(std::string_view text) const { return {detail::parse_residue(text, p_)}; }

private:
    std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Quotient hyperfields GF(p) / G.

class QuotientHyperfield {
public:
    using element = Residue;

    /// `subgroup` lists the elements of G (not just generators); it must be a
    /// subgroup of GF(p)^x.
    QuotientHyperfield(std::uint32_t p, std::vector<std::uint32_t> subgroup) : p_(p) {
        if (!is_prime(p) || p > 4093) throw structural_error("quotient hyperfields require a prime p below 4096");
        std::set<std::uint32_t> g;
        for (auto x : subgroup) {
            if (x == 0 || x >= p) throw structural_error("subgroup element out of range");
            g.insert(x);
        }
        if (!g.count(1)) throw structural_error("subgroup must contain 1");
        for (auto x : g)
            for (auto y : g)
                if (!g.count(static_cast<std::uint32_t>(std::uint64_t(x) * y % p)))
                    throw structural_error("not a subgroup of GF(" + std::to_string(p) + ")^x");
        subgroup_.assign(g.begin(), g.end());
        canonical_.assign(p, 0);
        for (std::uint32_t x = 1; x < p; ++x) {
            std::uint32_t best = p;
            for (auto h : subgroup_) best = std::min(best, static_cast<std::uint32_t>(std::uint64_t(x) * h % p));
            canonical_[x] = best;
        }
        for (std::uint32_t x = 1; x < p; ++x)
            if (canonical_[x] == x) reps_.push_back(x);
    }

    std::uint32_t prime() const { return p_; }
    const std::vector<std::uint32_t>& subgroup() const { return subgroup_; }

    std::string name() const {
        std::string out = "quot:GF(" + std::to_string(p_) + ")/{";
        for (std::size_t i = 0; i < subgroup_.size(); ++i) out += (i ? "," : "") + std::to_string(subgroup_[i]);
        return out + "}";
    }

    /// The quotient map GF(p) -> GF(p)/G.
    element project(std::uint32_t residue) const { return {canonical_.at(residue % p_)}; }

    element zero() const { return {0}; }
    element one() const { return project(1); }
    element epsilon() const { return project(p_ - 1); }
    element mul(const element& a, const element& b) const {
        return project(static_cast<std::uint32_t>(std::uint64_t(a.value) * b.value % p_));
    }
    element inv(const element& a) const {
        if (a.value == 0) throw precondition_error("zero is not invertible");
        return project(detail::pow_mod(a.value, p_ - 2, p_));
    }
    bool contains(const element& a) const { return a.value < p_ && canonical_[a.value] == a.value; }
    bool is_whole() const { return true; }
    bool is_pasture() const { return true; }

    /// Null iff some choice of coset representatives sums to zero in GF(p).
    bool is_null(const FormalSum<element>& s) const {
        std::vector<char> reach(p_, 0), next(p_, 0);
        reach[0] = 1;
        for (const auto& t : s) {
            if (!contains(t)) throw structural_error("foreign element in quotient sum");
            std::fill(next.begin(), next.end(), 0);
            for (std::uint32_t r = 0; r < p_; ++r) {
                if (!reach[r]) continue;
                for (auto h : subgroup_) next[(r + std::uint64_t(t.value) * h) % p_] = 1;
            }
            reach.swap(next);
        }
        return reach[0] != 0;
    }

    std::vector<element> elements() const {
        std::vector<element> out{zero()};
        for (auto r : reps_) out.push_back({r});
        return out;
    }

    std::string format(const element& a) const { return a.value == 0 ? "0" : "[" + std::to_string(a.value) + "]"; }

    element parse(std::string_view text) const {
        if (text.size() >= 2 && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
        return project(detail::parse_residue(text, p_));
    }

private:
    std::uint32_t p_;
    std::vector<std::uint32_t> subgroup_;
    std::vector<std::uint32_t> canonical_;
    std::vector<std::uint32_t> reps_;
};

// ---------------------------------------------------------------------------
// OAG idylls: Gamma ∪ {inf}, null iff the minimum term occurs at least twice.

class OagIdyll {
public:
    using element = OagValue;

    explicit OagIdyll(std::size_t rank) : rank_(rank) {}

    std::size_t rank() const { return rank_; }
    std::string name() const { return "oag:rank-" + std::to_string(rank_); }
    element zero() const { return OagValue::infinity(); }
    element one() const { return OagValue::zero(rank_); }
    element epsilon() const { return one(); }
    element mul(const element& a, const element& b) const { return a + b; }
    element inv(const element& a) const {
        if (a.is_infinite()) throw precondition_error("zero is not invertible");
        return -a;
    }
    bool contains(const element& a) const { return a.is_infinite() || a.rank() == rank_; }
    bool is_whole() const { return true; }
    bool is_pasture() const { return true; }

    bool is_null(const FormalSum<element>& s) const {
        if (s.empty()) return true;
        require_members(*this, s);
        const OagValue* min = &*s.begin();
        std::size_t count = 0;
        for (const auto& t : s) {
            auto c = t <=> *min;
            if (c < 0) {
                min = &t;
                count = 1;
            } else if (c == 0) {
                ++count;
            }
        }
        return count >= 2;
    }

    SumSet<element> sum_set(const element& a, const element& b) const {
        SumSet<element> out;
        if (a == b && a.is_finite()) {
            out.core = {a, zero()};
            out.tail_above = a;
        } else {
            out.core = {std::min(a, b)};
        }
        return out;
    }

    OagValue valuation(const element& a) const { return a; }
    std::vector<element> units_at(const OagValue& level) const { return {level}; }

    std::string format(const element& a) const {
        if (a.is_infinite()) return "inf";
        if (rank_ == 1) return to_string(a[0]);
        return a.str();
    }

    element parse(std::string_view text) const {
        OagValue v = parse_oag(text);
        if (!contains(v)) throw parse_error("value has the wrong rank for " + name(), 0);
        return v;
    }

private:
    std::size_t rank_;
};

// ---------------------------------------------------------------------------
// User-defined finite idylls, described by tables. Index 0 is zero and index 1 is one.

class TableIdyll {
public:
    using element = TableElem;

    TableIdyll(std::string name, std::vector<std::string> labels, std::vector<std::vector<int>> mul_table,
               std::function<bool(const std::vector<int>&)> null_rule, std::optional<int> epsilon)
        : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(mul_table)),
          null_rule_(std::move(null_rule)), epsilon_(epsilon) {
        if (labels_.size() < 2 || table_.size() != labels_.size())
            throw structural_error("table idyll needs matching labels and multiplication table");
        for (const auto& row : table_)
            if (row.size() != labels_.size()) throw structural_error("multiplication table must be square");
    }

    std::size_t size() const { return labels_.size(); }
    const std::optional<int>& declared_epsilon() const { return epsilon_; }

    std::string name() const { return name_; }
    element zero() const { return {0}; }
    element one() const { return {1}; }
    element epsilon() const {
        if (!epsilon_) throw structural_error("no epsilon declared for " + name_);
        return {*epsilon_};
    }
    element mul(const element& a, const element& b) const { return {table_.at(a.index).at(b.index)}; }
    element inv(const element& a) const {
        for (std::size_t j = 0; j < size(); ++j)
            if (table_[a.index][j] == 1) return {static_cast<int>(j)};
        throw precondition_error("element " + labels_[a.index] + " has no inverse");
    }
    bool contains(const element& a) const { return a.index >= 0 && static_cast<std::size_t>(a.index) < size(); }
    bool is_whole() const { return false; }
    bool is_pasture() const { return false; }

    bool is_null(const FormalSum<element>& s) const {
        std::vector<int> idx;
        for (const auto& t : s) idx.push_back(t.index);
        std::sort(idx.begin(), idx.end());
        return null_rule_(idx);
    }

    std::vector<element> elements() const {
        std::vector<element> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back({static_cast<int>(i)});
        return out;
    }

    std::string format(const element& a) const { return labels_.at(a.index); }
    element parse(std::string_view text) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (labels_[i] == text) return {static_cast<int>(i)};
        throw parse_error("unknown element '" + std::string(text) + "' of " + name_, 0);
    }

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> table_;
    std::function<bool(const std::vector<int>&)> null_rule_;
    std::optional<int> epsilon_;
};

/// F1 = {0, 1} with trivial null-ideal: an idyllic blueprint that is not an idyll (no epsilon).
inline TableIdyll field_with_one_element() {
    return TableIdyll("F1", {"0", "1"}, {{0, 0}, {0, 1}},
                      [](const std::vector<int>& idx) { return idx.empty(); }, std::nullopt);
}

} // namespace idyll
