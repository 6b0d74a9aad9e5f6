#pragma once

// Text front end: idyll names, element literals and the polynomial grammar.
//
//   poly  := ws [term (ws sep ws term)*] ws
//   sep   := '+' | '-'            ('-' multiplies the next term by epsilon)
//   term  := literal | literal ['*'] mono | mono
//   mono  := 'x' ['^' digits]
//
// A sign directly at the start of a term belongs to the literal when a literal
// follows, and means epsilon when the term is a bare monomial.

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "idyll/algebra.hpp"
#include "idyll/extension.hpp"
#include "idyll/morphism.hpp"
#include "idyll/poly.hpp"

namespace idyll {

using AnyIdyll = std::variant<KrasnerIdyll, SignIdyll, PhaseIdyll, RegularPartialField, RationalField, PrimeField,
                              QuotientHyperfield, OagIdyll, Extension<KrasnerIdyll>, Extension<SignIdyll>,
                              Extension<PrimeField>, Extension<QuotientHyperfield>>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::size_t parse_count(std::string_view s, const std::string& what) {
    if (s.empty() || s.size() > 3) throw parse_error("bad " + what + " '" + std::string(s) + "'", 0);
    std::size_t v = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw parse_error("bad " + what + " '" + std::string(s) + "'", 0);
        v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    return v;
}

/// `GF(p)` -> p.
inline std::uint32_t parse_gf(std::string_view s) {
    if (s.size() < 5 || s.substr(0, 3) != "GF(" || s.back() != ')')
        throw parse_error("expected GF(p), got '" + std::string(s) + "'", 0);
    auto inner = s.substr(3, s.size() - 4);
    if (inner.empty() || inner.size() > 5) throw parse_error("bad prime in '" + std::string(s) + "'", 0);
    std::uint32_t p = 0;
    for (char ch : inner) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw parse_error("bad prime in '" + std::string(s) + "'", 0);
        p = p * 10 + static_cast<std::uint32_t>(ch - '0');
    }
    return p;
}

/// `GF(p)/{a,b,...}`.
inline QuotientHyperfield parse_quotient(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) throw parse_error("expected GF(p)/{...}", 0);
    std::uint32_t p = parse_gf(s.substr(0, slash));
    auto g = s.substr(slash + 1);
    if (g.size() < 2 || g.front() != '{' || g.back() != '}') throw parse_error("expected {...} subgroup", slash + 1);
    g = g.substr(1, g.size() - 2);
    std::vector<std::uint32_t> elems;
    std::size_t start = 0;
    while (start <= g.size()) {
        auto comma = g.find(',', start);
        auto item = trim(g.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) elems.push_back(detail::parse_residue(item, p));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    try {
        return QuotientHyperfield(p, elems);
    } catch (const structural_error& e) {
        throw parse_error(e.what(), 0);
    }
}

template <class B>
AnyIdyll make_extension(B base, std::size_t rank) {
    if (rank < 1 || rank > 8) throw parse_error("extension rank must be between 1 and 8", 0);
    return Extension<B>(std::move(base), rank);
}

} // namespace detail

/// Parses an idyll name. `rank_override` (when nonzero) replaces the rank of
/// `trop`, `trop-real` and `oag` names that do not state one.
inline AnyIdyll parse_idyll(std::string_view name, std::size_t rank_override = 0) {
    name = detail::trim(name);
    auto ranked = [&](std::string_view stem, std::size_t& rank) {
        if (name == stem) {
            rank = rank_override ? rank_override : 1;
            return true;
        }
        std::string prefix = std::string(stem) + ":rank-";
        if (name.substr(0, prefix.size()) == prefix) {
            rank = detail::parse_count(name.substr(prefix.size()), "rank");
            return true;
        }
        return false;
    };
    std::size_t rank = 0;
    if (name == "krasner") return KrasnerIdyll{};
    if (name == "sign") return SignIdyll{};
    if (name == "phase") return PhaseIdyll{};
    if (name == "f1pm") return RegularPartialField{};
    if (name == "field:Q") return RationalField{};
    try {
        if (name.substr(0, 6) == "field:") return PrimeField(detail::parse_gf(name.substr(6)));
    } catch (const structural_error& e) {
        throw parse_error(e.what(), 0);
    }
    if (name.substr(0, 5) == "quot:") return detail::parse_quotient(name.substr(5));
    if (ranked("trop-real", rank)) return detail::make_extension(SignIdyll{}, rank);
    if (ranked("trop", rank)) return detail::make_extension(KrasnerIdyll{}, rank);
    if (ranked("oag", rank)) {
        if (rank < 1 || rank > 8) throw parse_error("OAG rank must be between 1 and 8", 0);
        return OagIdyll(rank);
    }
    if (name.substr(0, 4) == "ext:") {
        auto rest = name.substr(4);
        auto colon = rest.rfind(':');
        if (colon == std::string_view::npos) throw parse_error("expected ext:<base>:<rank>", 4);
        std::size_t r = detail::parse_count(rest.substr(colon + 1), "rank");
        auto base = parse_idyll(rest.substr(0, colon));
        if (auto* k = std::get_if<KrasnerIdyll>(&base)) return detail::make_extension(*k, r);
        if (auto* s = std::get_if<SignIdyll>(&base)) return detail::make_extension(*s, r);
        if (auto* p = std::get_if<PrimeField>(&base)) return detail::make_extension(*p, r);
        if (auto* q = std::get_if<QuotientHyperfield>(&base)) return detail::make_extension(*q, r);
        throw parse_error("unsupported extension base '" + std::string(rest.substr(0, colon)) + "'", 4);
    }
    throw parse_error("unknown idyll '" + std::string(name) + "'", 0);
}

inline std::string idyll_name(const AnyIdyll& b) {
    return std::visit([](const auto& x) { return std::string(x.name()); }, b);
}

// ---------------------------------------------------------------------------
// Polynomials.

struct TermAst {
    int deg;
    bool negated;         // preceded by '-'
    std::string literal;  // empty: coefficient one
    friend bool operator==(const TermAst&, const TermAst&) = default;
};

/// Syntax only; literals are kept as text.
inline std::vector<TermAst> parse_poly_ast(std::string_view text) {
    std::vector<TermAst> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i == n) return out;
    bool negated = false;
    while (true) {
        skip();
        if (i == n) throw parse_error("expected a term", i);
        TermAst t{0, negated, {}};
        std::size_t start = i;
        if (text[i] != 'x') {
            // Literal: up to whitespace, '*', 'x' or a top-level separator.
            int depth = 0;
            while (i < n) {
                char ch = text[i];
                if (ch == '(' || ch == '[' || ch == '{') ++depth;
                if (ch == ')' || ch == ']' || ch == '}') --depth;
                if (depth == 0 && (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == 'x')) break;
                if (depth == 0 && (ch == '+' || ch == '-') && i > start) {
                    char prev = text[i - 1];
                    if (prev != '^' && prev != '(' && prev != ',') break;
                }
                ++i;
            }
            if (depth != 0) throw parse_error("unbalanced brackets in literal", start);
            t.literal = std::string(text.substr(start, i - start));
            if (t.literal == "+" || t.literal == "-") {
                // A bare sign in front of a monomial.
                if (t.literal == "-") t.negated = !t.negated;
                t.literal.clear();
                skip();
                if (i == n || text[i] != 'x') throw parse_error("expected a coefficient or x", i);
            }
            skip();
            if (i < n && text[i] == '*') {
                ++i;
                skip();
                if (i == n || text[i] != 'x') throw parse_error("expected x after '*'", i);
            }
        }
        if (i < n && text[i] == 'x') {
            ++i;
            t.deg = 1;
            if (i < n && text[i] == '^') {
                ++i;
                std::size_t d0 = i;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == d0 || i - d0 > 6) throw parse_error("expected an exponent", d0);
                t.deg = std::stoi(std::string(text.substr(d0, i - d0)));
            }
        }
        if (t.literal.empty() && t.deg == 0) throw parse_error("empty term", start);
        out.push_back(t);
        skip();
        if (i == n) break;
        if (text[i] != '+' && text[i] != '-') throw parse_error(std::string("unexpected '") + text[i] + "'", i);
        negated = text[i] == '-';
        ++i;
    }
    return out;
}

template <Idyll I>
Polynomial<typename I::element> poly_from_ast(const I& b, const std::vector<TermAst>& ast) {
    std::vector<std::pair<int, typename I::element>> terms;
    std::vector<int> seen;
    for (const auto& t : ast) {
        if (std::find(seen.begin(), seen.end(), t.deg) != seen.end())
            throw parse_error("impure polynomial: degree " + std::to_string(t.deg) + " appears twice", 0);
        seen.push_back(t.deg);
        typename I::element c;
        try {
            c = t.literal.empty() ? b.one() : b.parse(t.literal);
        } catch (const parse_error&) {
            throw;
        } catch (const error& e) {
            throw parse_error(e.what(), 0);
        }
        if (t.negated) c = b.mul(b.epsilon(), c);
        terms.push_back({t.deg, c});
    }
    return Polynomial<typename I::element>::from_terms(terms);
}

template <Idyll I>
Polynomial<typename I::element> parse_poly(const I& b, std::string_view text) {
    return poly_from_ast(b, parse_poly_ast(text));
}

/// Inverse of poly_to_json.
template <Idyll I>
Polynomial<typename I::element> poly_from_json(const I& b, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms")) throw parse_error("polynomial JSON needs a terms array", 0);
    if (j.contains("idyll") && j["idyll"] != b.name())
        throw parse_error("polynomial JSON is over " + j["idyll"].get<std::string>(), 0);
    std::vector<TermAst> ast;
    for (const auto& t : j["terms"]) ast.push_back({t.at("deg").get<int>(), false, t.at("coef").get<std::string>()});
    return poly_from_ast(b, ast);
}

// ---------------------------------------------------------------------------
// Coefficientwise images of rational polynomials.

inline Polynomial<ExtElem<KrasnerElem>> trop_of_rational(const Polynomial<Rational>& f, std::uint32_t p) {
    return map_coeffs(f, [p](const Rational& q) { return trop_of(q, p); });
}

inline Polynomial<SignElem> sign_of_poly(const Polynomial<Rational>& f) {
    return map_coeffs(f, [](const Rational& q) { return sign_of_rational(q); });
}

inline Polynomial<ExtElem<SignElem>> trop_real_of_rational(const Polynomial<Rational>& f, std::uint32_t p) {
    return map_coeffs(f, [p](const Rational& q) { return trop_real_of(q, p); });
}

} // namespace idyll
