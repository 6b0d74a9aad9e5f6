#pragma once

// Tropical extensions C of an OAG Gamma = Q^n by a base idyll B. Nonzero elements
// are pairs u^g with u a unit of B and g in Gamma. Multiplication may be twisted
// by a 2-cocycle; the default is the split extension B[Gamma].

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "idyll/algebra.hpp"

namespace idyll {

template <class U>
struct ExtElem {
    bool nonzero = false;
    U unit{};
    OagValue level; // Infinity for zero

    friend bool operator==(const ExtElem& a, const ExtElem& b) {
        if (a.nonzero != b.nonzero) return false;
        return !a.nonzero || (a.level == b.level && a.unit == b.unit);
    }

    /// Zero first, then by level, then by unit.
    friend std::strong_ordering operator<=>(const ExtElem& a, const ExtElem& b) {
        if (a.nonzero != b.nonzero) return a.nonzero ? std::strong_ordering::greater : std::strong_ordering::less;
        if (!a.nonzero) return std::strong_ordering::equal;
        if (auto c = a.level <=> b.level; c != 0) return c;
        if (a.unit < b.unit) return std::strong_ordering::less;
        if (b.unit < a.unit) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

template <class U>
bool is_zero_element(const ExtElem<U>& x) {
    return !x.nonzero;
}

/// Leading coefficient: the unit together with the torsor level it lives in.
template <class U>
struct Leading {
    U unit;
    OagValue level;
};

template <Idyll Base>
class Extension {
public:
    using base_type = Base;
    using unit_type = typename Base::element;
    using element = ExtElem<unit_type>;
    using cocycle_type = std::function<unit_type(const OagValue&, const OagValue&)>;

    explicit Extension(Base base, std::size_t rank = 1, cocycle_type cocycle = {})
        : base_(std::move(base)), rank_(rank), cocycle_(std::move(cocycle)) {}

    const Base& base() const { return base_; }
    std::size_t rank() const { return rank_; }
    bool is_split() const { return !cocycle_; }

    std::string name() const {
        std::string b = base_.name();
        std::string stem = b == "krasner" ? "trop" : b == "sign" ? "trop-real" : "";
        if (stem.empty()) return "ext:" + b + ":" + std::to_string(rank_);
        return rank_ == 1 ? stem : stem + ":rank-" + std::to_string(rank_);
    }

    element zero() const { return {}; }
    element one() const { return make(base_.one(), OagValue::zero(rank_)); }
    element epsilon() const { return make(base_.epsilon(), OagValue::zero(rank_)); }

    element make(const unit_type& u, const OagValue& level) const {
        if (is_zero_element(u)) return zero();
        return {true, u, level};
    }

    /// The embedding B -> C onto level zero.
    element embed(const unit_type& u) const { return make(u, OagValue::zero(rank_)); }

    /// The representative 1^g of the torsor at level g.
    element representative(const OagValue& level) const { return make(base_.one(), level); }

    unit_type sigma(const OagValue& a, const OagValue& b) const { return cocycle_ ? cocycle_(a, b) : base_.one(); }

    element mul(const element& a, const element& b) const {
        if (!a.nonzero || !b.nonzero) return zero();
        unit_type u = base_.mul(base_.mul(a.unit, b.unit), sigma(a.level, b.level));
        return make(u, a.level + b.level);
    }

    element inv(const element& a) const {
        if (!a.nonzero) throw precondition_error("zero is not invertible");
        OagValue neg = -a.level;
        return make(base_.inv(base_.mul(a.unit, sigma(a.level, neg))), neg);
    }

    bool contains(const element& a) const {
        if (!a.nonzero) return true;
        return a.level.is_finite() && a.level.rank() == rank_ && !is_zero_element(a.unit) && base_.contains(a.unit);
    }

    bool is_whole() const { return base_.is_whole(); }
    bool is_pasture() const { return base_.is_pasture(); }

    OagValue valuation(const element& a) const { return a.nonzero ? a.level : OagValue::infinity(); }

    Leading<unit_type> lc(const element& a) const {
        if (!a.nonzero) throw precondition_error("zero has no leading coefficient");
        return {a.unit, a.level};
    }

    /// Null iff the minimal-valuation terms, divided by 1^g0, are null in B.
    bool is_null(const FormalSum<element>& s) const {
        if (s.empty()) return true;
        return is_null_normalized(s, representative(min_level(s)));
    }

    /// Same test with an arbitrary representative `rep` of the minimal level.
    bool is_null_normalized(const FormalSum<element>& s, const element& rep) const {
        if (s.empty()) return true;
        require_members(*this, s);
        OagValue g0 = min_level(s);
        if (!rep.nonzero || rep.level != g0) throw precondition_error("representative is not at the minimal level");
        element r = inv(rep);
        FormalSum<unit_type> reduced;
        for (const auto& t : s)
            if (t.level == g0) reduced.push(mul(t, r).unit);
        return base_.is_null(reduced);
    }

    SumSet<element> sum_set(const element& a, const element& b) const
        requires(supports_sum_sets<Base>())
    {
        SumSet<element> out;
        if (!a.nonzero || !b.nonzero || a.level != b.level) {
            out.core = {valuation(a) <= valuation(b) ? a : b};
            return out;
        }
        element r = representative(a.level), ri = inv(r);
        auto base_set = idyll::sum_set(base_, mul(a, ri).unit, mul(b, ri).unit);
        for (const auto& c : base_set.core) {
            if (is_zero_element(c)) {
                out.core.push_back(zero());
                out.tail_above = a.level;
            } else {
                out.core.push_back(mul(embed(c), r));
            }
        }
        out.normalize();
        return out;
    }

    std::vector<element> units_at(const OagValue& level) const
        requires EnumerableIdyll<Base>
    {
        std::vector<element> out;
        for (const auto& u : base_.elements())
            if (!is_zero_element(u)) out.push_back(make(u, level));
        return out;
    }

    /// Evaluation at t = 0 on the valuation ring.
    unit_type ev0(const element& a) const {
        if (!a.nonzero) return base_.zero();
        if (a.level < OagValue::zero(rank_)) throw precondition_error("ev0 needs nonnegative valuation");
        return a.level == OagValue::zero(rank_) ? a.unit : base_.zero();
    }

    std::string format_level(const OagValue& g) const { return rank_ == 1 ? to_string(g[0]) : g.str(); }

    /// `0`, or `u^g` with g a rational (rank 1) or a tuple.
    std::string format(const element& a) const {
        if (!a.nonzero) return "0";
        return base_.format(a.unit) + "^" + format_level(a.level);
    }

    /// Accepts `u^g`, `inf`, a bare base unit (level zero) and `0`. Over Krasner
    /// bases a bare value `g` means 1^g, so `0` is 1^0 there.
    element parse(std::string_view text) const {
        if (text == "inf") return zero();
        if (text == "0" && !std::is_same_v<Base, KrasnerIdyll>) return zero();
        auto caret = text.find('^');
        if (caret == std::string_view::npos) {
            if constexpr (std::is_same_v<Base, KrasnerIdyll>) return make(base_.one(), parse_level(text));
            else return embed(nonzero_unit(text));
        }
        return make(nonzero_unit(text.substr(0, caret)), parse_level(text.substr(caret + 1)));
    }

    OagValue parse_level(std::string_view text) const {
        OagValue g = parse_oag(text);
        if (g.is_infinite()) throw parse_error("level must be finite", 0);
        if (g.rank() != rank_) throw parse_error("level has rank " + std::to_string(g.rank()) + ", expected " +
                                                     std::to_string(rank_), 0);
        return g;
    }

private:
    unit_type nonzero_unit(std::string_view text) const {
        unit_type u = base_.parse(text);
        if (is_zero_element(u)) throw parse_error("unit part must be nonzero", 0);
        return u;
    }

    OagValue min_level(const FormalSum<element>& s) const {
        OagValue m = OagValue::infinity();
        for (const auto& t : s) m = std::min(m, t.level);
        return m;
    }

    Base base_;
    std::size_t rank_;
    cocycle_type cocycle_;
};

using TropicalIdyll = Extension<KrasnerIdyll>;
using TropicalRealIdyll = Extension<SignIdyll>;

inline TropicalIdyll make_trop(std::size_t rank = 1) { return TropicalIdyll(KrasnerIdyll{}, rank); }
inline TropicalRealIdyll make_trop_real(std::size_t rank = 1) { return TropicalRealIdyll(SignIdyll{}, rank); }

/// K[Gamma] and the OAG idyll Gamma ∪ {inf} are the same thing.
inline ExtElem<KrasnerElem> from_oag(const OagValue& v) {
    if (v.is_infinite()) return {};
    return {true, KrasnerElem{true}, v};
}

inline OagValue to_oag(const ExtElem<KrasnerElem>& x) { return x.nonzero ? x.level : OagValue::infinity(); }

// ---------------------------------------------------------------------------
// Layered hypersums (hyperfield bases).

/// Result of a layered hypersum: the finite part plus, in case H4, every element
/// of valuation strictly above `tail_above`.
template <class E>
struct LayeredSet {
    int rule = 0; // 1..4
    std::vector<E> core;
    std::optional<OagValue> tail_above;

    template <class V>
    bool contains(const E& x, const V& valuation) const {
        if (std::find(core.begin(), core.end(), x) != core.end()) return true;
        return tail_above && *tail_above < valuation(x);
    }
};

/// Hypersum y ⊞ z on the layered set built from the base hyperfield and the torsor levels.
template <EnumerableIdyll Base>
LayeredSet<typename Extension<Base>::element> layering_hypersum(const Extension<Base>& e,
                                                               const typename Extension<Base>::element& y,
                                                               const typename Extension<Base>::element& z) {
    if (!e.base().is_pasture() || !e.base().is_whole())
        throw precondition_error("layering needs a hyperfield base, got " + e.base().name());
    using E = typename Extension<Base>::element;
    LayeredSet<E> out;
    auto vy = e.valuation(y), vz = e.valuation(z);
    if (vy < vz) {
        out.rule = 1;
        out.core = {y};
        return out;
    }
    if (vz < vy) {
        out.rule = 2;
        out.core = {z};
        return out;
    }
    if (!y.nonzero) {
        out.rule = 3;
        out.core = {e.zero()};
        return out;
    }
    // Same level g: transport the base hypersum along the torsor B^g.
    const auto& b = e.base();
    E r = e.representative(vy), ri = e.inv(r);
    auto u = e.mul(y, ri).unit, w = e.mul(z, ri).unit;
    bool has_zero = false;
    for (const auto& c : b.elements()) {
        if (!b.is_null(FormalSum<typename Base::element>{u, w, b.mul(b.epsilon(), c)})) continue;
        if (is_zero_element(c))
            has_zero = true;
        else
            out.core.push_back(e.mul(e.embed(c), r));
    }
    if (has_zero) {
        out.rule = 4;
        out.core.push_back(e.zero());
        out.tail_above = vy;
    } else {
        out.rule = 3;
    }
    std::sort(out.core.begin(), out.core.end());
    return out;
}

// ---------------------------------------------------------------------------
// Axiom checks.

namespace detail {

inline OagValue random_level(std::mt19937_64& rng, std::size_t rank) {
    static const int nums[] = {-2, -1, -1, 0, 0, 0, 1, 1, 2};
    std::uniform_int_distribution<int> pick(0, 8), half(0, 3);
    OagValue::coords_type c;
    for (std::size_t i = 0; i < rank; ++i) c.push_back(make_rational(nums[pick(rng)], half(rng) == 0 ? 2 : 1));
    return OagValue(std::move(c));
}

template <EnumerableIdyll Base>
typename Extension<Base>::element random_ext_element(const Extension<Base>& e, std::mt19937_64& rng,
                                                     const std::vector<OagValue>& levels, bool allow_zero) {
    auto elems = e.base().elements();
    std::uniform_int_distribution<std::size_t> pick_u(0, elems.size() - 1), pick_l(0, levels.size() - 1);
    auto u = elems[pick_u(rng)];
    if (!allow_zero)
        while (is_zero_element(u)) u = elems[pick_u(rng)];
    return e.make(u, levels[pick_l(rng)]);
}

} // namespace detail

/// Checks the extension axioms on sampled elements; returns violations (empty = pass).
template <EnumerableIdyll Base>
std::vector<std::string> check_extension_axioms(const Extension<Base>& e, int samples, std::uint64_t seed = 1) {
    std::vector<std::string> bad;
    auto report = [&](const std::string& what) {
        if (bad.size() < 20) bad.push_back(what);
    };
    using E = typename Extension<Base>::element;
    using U = typename Base::element;
    const auto& b = e.base();
    std::mt19937_64 rng(seed);

    std::vector<OagValue> levels;
    for (int i = 0; i < 6; ++i) levels.push_back(detail::random_level(rng, e.rank()));
    levels.push_back(OagValue::zero(e.rank()));

    auto rand_nonzero = [&] { return detail::random_ext_element(e, rng, levels, false); };

    // (i) exactness of 1 -> B^x -> C^x -> Gamma -> 1.
    for (int k = 0; k < samples; ++k) {
        E x = rand_nonzero(), y = rand_nonzero(), z = rand_nonzero();
        if (e.mul(e.mul(x, y), z) != e.mul(x, e.mul(y, z))) {
            report("exactness: multiplication is not associative at " + e.format(x) + ", " + e.format(y) + ", " +
                   e.format(z));
        }
        if (e.mul(x, y) != e.mul(y, x)) report("exactness: multiplication is not commutative");
        if (e.valuation(e.mul(x, y)) != e.valuation(x) + e.valuation(y))
            report("exactness: valuation is not a homomorphism");
        if (e.mul(x, e.inv(x)) != e.one()) report("exactness: inverse failure at " + e.format(x));
        if (e.mul(e.one(), x) != x) report("exactness: one is not neutral at " + e.format(x));
        U u = x.unit;
        if (e.mul(e.embed(u), e.representative(x.level)) != e.make(u, x.level))
            report("exactness: B^x does not act freely on the level " + e.format_level(x.level));
    }
    for (const auto& u : b.elements()) {
        if (is_zero_element(u)) continue;
        for (const auto& w : b.elements()) {
            if (is_zero_element(w)) continue;
            if (e.mul(e.embed(u), e.embed(w)) != e.embed(b.mul(u, w)))
                report("exactness: the embedding of B^x is not multiplicative");
        }
    }
    if (e.mul(e.epsilon(), e.epsilon()) != e.one()) report("exactness: epsilon does not square to one");

    // (ii) fullness: sums of embedded base elements.
    {
        auto elems = b.elements();
        std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1), len(0, 4);
        for (int k = 0; k < samples; ++k) {
            FormalSum<U> s;
            FormalSum<E> t;
            for (std::size_t j = len(rng); j > 0; --j) {
                U u = elems[pick(rng)];
                s.push(u);
                t.push(e.embed(u));
            }
            if (b.is_null(s) != e.is_null(t)) report("fullness: embedded sum disagrees with the base");
        }
    }

    // (iii) appending a term of larger valuation never changes nullity.
    {
        std::uniform_int_distribution<std::size_t> len(1, 4);
        for (int k = 0; k < samples; ++k) {
            FormalSum<E> s;
            for (std::size_t j = len(rng); j > 0; --j) s.push(rand_nonzero());
            OagValue m = OagValue::infinity();
            for (const auto& t : s) m = std::min(m, t.level);
            E extra = rand_nonzero();
            if (!(m < extra.level)) continue;
            FormalSum<E> s2 = s;
            s2.push(extra);
            if (e.is_null(s) != e.is_null(s2)) report("minimal terms: higher term changed the verdict");
            // Representative independence.
            E rep = e.make(rand_nonzero().unit, m);
            if (e.is_null_normalized(s, rep) != e.is_null(s)) report("normalization depends on the representative");
        }
    }

    // (iv) layered hypersums agree with the null-ideal.
    if (b.is_pasture() && b.is_whole()) {
        for (int k = 0; k < samples; ++k) {
            E y = detail::random_ext_element(e, rng, levels, true);
            E z = detail::random_ext_element(e, rng, levels, true);
            if (k % 3 == 0 && y.nonzero) z = e.make(z.nonzero ? z.unit : b.one(), y.level);
            E x = detail::random_ext_element(e, rng, levels, true);
            if (k % 2 == 0 && y.nonzero) x = e.make(x.nonzero ? x.unit : b.one(), y.level);
            auto hs = layering_hypersum(e, y, z);
            bool member = hs.contains(x, [&](const E& v) { return e.valuation(v); });
            bool null = e.is_null(FormalSum<E>{y, z, e.mul(e.epsilon(), x)});
            if (member != null)
                report("layering: case H" + std::to_string(hs.rule) + " disagrees at " + e.format(y) + " + " +
                       e.format(z) + " -> " + e.format(x));
        }
    }
    return bad;
}

// ---------------------------------------------------------------------------
// The product blueprint S x T, read off pairs (s, g) written as s^g. A sum is
// null iff both projections are null.

inline bool sign_times_tropical_is_null(const FormalSum<ExtElem<SignElem>>& s) {
    FormalSum<SignElem> signs;
    FormalSum<OagValue> values;
    for (const auto& t : s) {
        signs.push(t.unit);
        values.push(t.level);
    }
    OagIdyll oag(s.empty() ? 1 : s.begin()->level.rank());
    return SignIdyll{}.is_null(signs) && oag.is_null(values);
}

} // namespace idyll
