#pragma once

// Exact ordered abelian groups (Q^n, lex) with an adjoined absorbing Infinity.

#include <boost/container/small_vector.hpp>

#include <cctype>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "idyll/error.hpp"
#include "idyll/rational.hpp"

namespace idyll {

class OagValue {
public:
    using coords_type = boost::container::small_vector<Rational, 3>;

    /// Infinity.
    OagValue() = default;

    explicit OagValue(coords_type coords) : coords_(std::move(coords)), finite_(true) {}

    OagValue(std::initializer_list<Rational> coords) : coords_(coords), finite_(true) {}

    static OagValue infinity() { return OagValue(); }

    static OagValue zero(std::size_t rank) {
        coords_type c(rank, Rational(0));
        return OagValue(std::move(c));
    }

    static OagValue scalar(Rational q) { return OagValue({std::move(q)}); }

    bool is_infinite() const noexcept { return !finite_; }
    bool is_finite() const noexcept { return finite_; }

    std::size_t rank() const {
        if (!finite_) throw structural_error("Infinity has no rank");
        return coords_.size();
    }

    const coords_type& coords() const { return coords_; }

    const Rational& operator[](std::size_t i) const { return coords_.at(i); }

    friend OagValue operator+(const OagValue& a, const OagValue& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        check_rank(a, b);
        coords_type out(a.coords_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] + b.coords_[i];
        return OagValue(std::move(out));
    }

    friend OagValue operator-(const OagValue& a) {
        if (a.is_infinite()) throw structural_error("Infinity has no negative");
        coords_type out(a.coords_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a.coords_[i];
        return OagValue(std::move(out));
    }

    friend OagValue operator-(const OagValue& a, const OagValue& b) { return a + (-b); }

    /// Integer multiple k*a.
    friend OagValue operator*(long long k, const OagValue& a) {
        if (a.is_infinite()) return infinity();
        coords_type out(a.coords_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] * k;
        return OagValue(std::move(out));
    }

    /// Lexicographic order; Infinity is the maximum.
    friend std::strong_ordering operator<=>(const OagValue& a, const OagValue& b) {
        if (a.is_infinite() || b.is_infinite()) {
            if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
            return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        check_rank(a, b);
        for (std::size_t i = 0; i < a.coords_.size(); ++i) {
            if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
            if (b.coords_[i] < a.coords_[i]) return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    friend bool operator==(const OagValue& a, const OagValue& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

    /// `(q1,q2,...)`, or `inf`.
    std::string str() const {
        if (!finite_) return "inf";
        std::string out = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) out += ',';
            out += to_string(coords_[i]);
        }
        return out + ")";
    }

private:
    static void check_rank(const OagValue& a, const OagValue& b) {
        if (a.coords_.size() != b.coords_.size())
            throw structural_error("rank mismatch: " + std::to_string(a.coords_.size()) + " vs " +
                                   std::to_string(b.coords_.size()));
    }

    coords_type coords_;
    bool finite_ = false;
};

struct HeadSplit {
    /// Empty when the input was Infinity.
    std::optional<Rational> head;
    OagValue tail;
};

/// Splits (g1, g2, ..., gn) into g1 and (g2, ..., gn); Infinity maps to (none, Infinity).
inline HeadSplit project_head(const OagValue& a) {
    if (a.is_infinite()) return {std::nullopt, OagValue::infinity()};
    if (a.rank() == 0) throw structural_error("cannot project the head of a rank-0 value");
    OagValue::coords_type tail(a.coords().begin() + 1, a.coords().end());
    return {a[0], OagValue(std::move(tail))};
}

inline OagValue prepend_head(const Rational& head, const OagValue& tail) {
    if (tail.is_infinite()) return OagValue::infinity();
    OagValue::coords_type c;
    c.reserve(tail.rank() + 1);
    c.push_back(head);
    c.insert(c.end(), tail.coords().begin(), tail.coords().end());
    return OagValue(std::move(c));
}

/// Parses `inf`, a bare rational (rank 1), or `(q1,...,qn)`.
inline OagValue parse_oag(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text == "inf") return OagValue::infinity();
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') throw parse_error("unterminated value tuple", text.size());
        std::string_view body = text.substr(1, text.size() - 2);
        OagValue::coords_type coords;
        if (!trim(body).empty()) {
            std::size_t start = 0;
            while (true) {
                std::size_t comma = body.find(',', start);
                coords.push_back(parse_rational(trim(body.substr(start, comma - start))));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
        }
        return OagValue(std::move(coords));
    }
    return OagValue::scalar(parse_rational(text));
}

} // namespace idyll
