#pragma once

// Exhaustive (or carrier-sampled) verification of the idyll axioms.

#include <string>
#include <vector>

#include "idyll/algebra.hpp"

namespace idyll {

namespace detail {

/// Calls fn on every multiset of size <= max_len drawn from `items` (non-decreasing index vectors).
template <class E, class Fn>
void for_each_multiset(const std::vector<E>& items, int max_len, Fn&& fn) {
    std::vector<std::size_t> idx;
    auto rec = [&](auto& self, std::size_t from) -> void {
        FormalSum<E> s;
        for (auto i : idx) s.push(items[i]);
        fn(s);
        if (static_cast<int>(idx.size()) == max_len) return;
        for (std::size_t i = from; i < items.size(); ++i) {
            idx.push_back(i);
            self(self, i);
            idx.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace detail

/// Checks the idyll axioms using `carrier` as the element set. For finite idylls
/// pass the full element list; for infinite ones a sample, in which case closure
/// of the sample under products is not required.
template <Idyll I>
std::vector<std::string> check_idyll_axioms_on(const I& b, const std::vector<typename I::element>& carrier,
                                               int max_len) {
    using E = typename I::element;
    std::vector<std::string> bad;
    auto report = [&](const std::string& what) {
        if (bad.size() < 20) bad.push_back(what);
    };

    if (b.zero() == b.one()) report("zero equals one");
    std::vector<E> units;
    for (const auto& x : carrier)
        if (!is_zero_element(x)) units.push_back(x);

    for (const auto& x : carrier) {
        if (!b.contains(x)) report("carrier element " + b.format(x) + " is foreign");
        if (b.mul(x, b.zero()) != b.zero()) report("zero does not absorb " + b.format(x));
        if (b.mul(x, b.one()) != x) report("one is not neutral for " + b.format(x));
    }
    for (const auto& x : units) {
        try {
            if (b.mul(x, b.inv(x)) != b.one()) report(b.format(x) + " times its inverse is not one");
        } catch (const error&) {
            report(b.format(x) + " is not invertible");
        }
        for (const auto& y : units) {
            if (b.mul(x, y) != b.mul(y, x)) report("multiplication not commutative");
            if (is_zero_element(b.mul(x, y))) report("product of units is zero");
            for (const auto& z : units)
                if (b.mul(b.mul(x, y), z) != b.mul(x, b.mul(y, z))) report("multiplication not associative");
        }
    }

    std::optional<E> eps;
    try {
        eps = b.epsilon();
    } catch (const error&) {
        report("no epsilon");
    }
    if (eps) {
        if (b.mul(*eps, *eps) != b.one()) report("epsilon does not square to one");
        if (!b.is_null(FormalSum<E>{b.one(), *eps})) report("1 + epsilon is not null");
        for (const auto& x : units)
            if (x != *eps && b.mul(x, x) == b.one() && b.is_null(FormalSum<E>{b.one(), x}))
                report("epsilon is not unique: " + b.format(x) + " also qualifies");
    } else {
        bool found = false;
        for (const auto& x : units)
            if (b.mul(x, x) == b.one() && b.is_null(FormalSum<E>{b.one(), x})) found = true;
        if (found) report("an epsilon exists but none is declared");
    }

    if (!b.is_null(FormalSum<E>{})) report("empty sum is not null");
    for (const auto& x : units)
        if (b.is_null(FormalSum<E>{x})) report("improper: singleton " + b.format(x) + " is null");

    // Ideal closure under unit scaling and under addition.
    std::vector<FormalSum<E>> nulls;
    detail::for_each_multiset(units, max_len, [&](const FormalSum<E>& s) {
        if (!b.is_null(s)) return;
        nulls.push_back(s);
        for (const auto& x : units)
            if (!b.is_null(scale(b, s, x))) report("null sum not closed under scaling by " + b.format(x));
    });
    for (const auto& s : nulls)
        for (const auto& t : nulls)
            if (static_cast<int>(s.size() + t.size()) <= max_len && !b.is_null(s + t))
                report("sum of two null sums is not null");
    return bad;
}

template <EnumerableIdyll I>
std::vector<std::string> check_idyll_axioms(const I& b, int max_len) {
    return check_idyll_axioms_on(b, b.elements(), max_len);
}

} // namespace idyll
