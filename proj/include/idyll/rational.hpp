#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "idyll/error.hpp"

namespace idyll {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw structural_error("zero denominator");
    return Rational(Integer(num), Integer(den));
}

/// Always `p` or `p/q`; never a decimal.
inline std::string to_string(const Rational& q) {
    return q.str();
}

/// Accepts `[+-]digits` or `[+-]digits/digits`.
inline Rational parse_rational(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    auto digits = [&](std::size_t& pos) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw parse_error("expected digits in rational '" + std::string(text) + "'", pos);
        return Integer(std::string(text.substr(start, pos - start)));
    };
    Integer num = digits(i);
    Integer den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = digits(i);
        if (den == 0) throw parse_error("zero denominator", i);
    }
    if (i != text.size()) throw parse_error("trailing characters in rational '" + std::string(text) + "'", i);
    Rational q(num, den);
    return negative ? Rational(-q) : q;
}

} // namespace idyll
