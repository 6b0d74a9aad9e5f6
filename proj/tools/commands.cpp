#include <iostream>
#include <random>
#include <sstream>
#include <type_traits>

#include "cli.hpp"
#include "idyll/axioms.hpp"
#include "idyll/lift.hpp"
#include "idyll/mult.hpp"
#include "idyll/newton.hpp"
#include "idyll/oracle.hpp"
#include "idyll/parse.hpp"

namespace cli {

using namespace idyll;
using nlohmann::json;

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

namespace {

template <class I>
using Elem = typename I::element;

template <class I>
Polynomial<Elem<I>> load_poly(const I& b, const Options& o) {
    auto text = idyll::detail::trim(o.poly);
    if (o.prime) {
        auto fq = parse_poly(RationalField{}, text);
        if constexpr (std::is_same_v<I, SignIdyll>) {
            return sign_of_poly(fq);
        } else if constexpr (std::is_same_v<I, Extension<KrasnerIdyll>>) {
            if (b.rank() != 1) throw parse_error("--prime needs a rank-1 idyll", 0);
            return trop_of_rational(fq, o.prime);
        } else if constexpr (std::is_same_v<I, Extension<SignIdyll>>) {
            if (b.rank() != 1) throw parse_error("--prime needs a rank-1 idyll", 0);
            return trop_real_of_rational(fq, o.prime);
        } else {
            throw parse_error("--prime maps into sign, trop or trop-real, not " + b.name(), 0);
        }
    }
    if (!text.empty() && text.front() == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw parse_error(e.what(), e.byte);
        }
        return poly_from_json(b, j);
    }
    return parse_poly(b, text);
}

template <class I>
Elem<I> load_at(const I& b, const Options& o) {
    auto text = std::string(idyll::detail::trim(o.at));
    try {
        auto a = b.parse(text);
        if (!b.contains(a)) throw parse_error("'" + text + "' is not an element of " + b.name(), 0);
        return a;
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        throw parse_error(e.what(), 0);
    }
}

template <class F>
int with_idyll(const Options& o, F&& fn) {
    auto b = parse_idyll(o.idyll, o.rank);
    return std::visit(fn, b);
}

template <class I>
json chain_json(const I& b, const Polynomial<Elem<I>>& f, const FactorizationChain<Elem<I>>& c) {
    json q = json::array();
    for (const auto& g : c.quotients) q.push_back(poly_to_json(b, g));
    return {{"root", b.format(c.root)}, {"quotients", q}, {"verified", verify_chain(b, f, c)}};
}

template <class I>
std::string chain_text(const I& b, const Polynomial<Elem<I>>& f, const FactorizationChain<Elem<I>>& c) {
    std::ostringstream out;
    const Polynomial<Elem<I>>* prev = &f;
    for (const auto& g : c.quotients) {
        out << "  " << format_poly(b, *prev) << "  <=  (x - " << b.format(c.root) << ") * (" << format_poly(b, g)
            << ")\n";
        prev = &g;
    }
    return out.str();
}

} // namespace

int cmd_mult(const Options& o) {
    return with_idyll(o, [&](const auto& b) {
        auto f = load_poly(b, o);
        auto a = load_at(b, o);
        auto engine = parse_engine(o.engine);
        auto r = multiplicity(b, f, a, engine);
        if (o.certificate && r.chain.quotients.empty() && r.count > 0) r = multiplicity_search(b, f, a);
        json j{{"idyll", b.name()}, {"poly", poly_to_json(b, f)}, {"at", b.format(a)},
               {"engine", o.engine}, {"multiplicity", r.count}, {"truncated", r.truncated}};
        std::string text = "mult_" + b.format(a) + "(" + format_poly(b, f) + ") = " + std::to_string(r.count) + "\n";
        if (o.certificate) {
            j["certificate"] = chain_json(b, f, r.chain);
            text += chain_text(b, f, r.chain);
            text += j["certificate"].dump() + "\n";
        }
        emit(o, j, text);
        return static_cast<int>(ok);
    });
}

int cmd_roots(const Options& o) {
    return with_idyll(o, [&](const auto& b) {
        auto f = load_poly(b, o);
        auto rep = degree_bound_check(b, f, parse_engine(o.engine));
        json roots = json::array();
        std::string text;
        for (const auto& [a, m] : rep.roots) {
            roots.push_back({{"root", b.format(a)}, {"multiplicity", m}});
            text += b.format(a) + "  multiplicity " + std::to_string(m) + "\n";
        }
        if (rep.roots.empty()) text = "no roots\n";
        emit(o, {{"idyll", b.name()}, {"poly", poly_to_json(b, f)}, {"roots", roots}}, text);
        return static_cast<int>(ok);
    });
}

int cmd_divide(const Options& o) {
    return with_idyll(o, [&](const auto& b) {
        auto f = load_poly(b, o);
        auto a = load_at(b, o);
        auto qs = divide_once(b, f, a);
        json arr = json::array();
        std::string text;
        for (const auto& g : qs) {
            arr.push_back(poly_to_json(b, g));
            text += format_poly(b, g) + "\n";
        }
        if (qs.empty()) text = "no quotients: " + b.format(a) + " is not a root\n";
        emit(o, {{"idyll", b.name()}, {"at", b.format(a)}, {"quotients", arr}}, text);
        return static_cast<int>(ok);
    });
}

int cmd_lift(const Options& o) {
    return with_idyll(o, [&](const auto& b) -> int {
        using I = std::decay_t<decltype(b)>;
        if constexpr (is_extension<I>::value) {
            auto f = load_poly(b, o);
            auto a = load_at(b, o);
            auto h = initial_form_at(b, f, a).normalized;
            auto chain = lift_chain(b, f, a);
            json j{{"idyll", b.name()},
                   {"initial_form", poly_to_json(b.base(), h)},
                   {"chain", chain_json(b, f, chain)},
                   {"length", chain.quotients.size()}};
            std::string text = "normalized initial form: " + format_poly(b.base(), h) + "\n" + chain_text(b, f, chain) +
                                "lifted chain length " + std::to_string(chain.quotients.size()) + "\n";
            emit(o, j, text);
            return ok;
        } else {
            throw unsupported_operation("lift needs a tropical extension, got " + b.name());
        }
    });
}

int cmd_newton(const Options& o) {
    return with_idyll(o, [&](const auto& b) -> int {
        using I = std::decay_t<decltype(b)>;
        if constexpr (ValuedIdyll<I>) {
            auto f = load_poly(b, o);
            auto np = newton_polygon(b, f);
            std::string fmt = o.json ? "json" : o.format;
            if (fmt == "json") std::cout << polygon_to_json(np).dump(2) << "\n";
            else if (fmt == "svg") std::cout << render_svg(np);
            else std::cout << render_ascii(np);
            return ok;
        } else {
            throw unsupported_operation("Newton polygons need a valued idyll, got " + b.name());
        }
    });
}

namespace {

template <class B>
int initial_form_report(const Options& o, const Extension<B>& e, const Polynomial<Elem<Extension<B>>>& f,
                        const Elem<Extension<B>>& a) {
    auto lf = initial_form_at(e, f, a);
    json j{{"idyll", e.name()},
           {"at", e.format(a)},
           {"level", e.format_level(lf.level)},
           {"form", poly_to_json(e, lf.form)},
           {"normalized", poly_to_json(e.base(), lf.normalized)}};
    std::string text = "level " + e.format_level(lf.level) + "\nIn_a f = " + format_poly(e, lf.form) +
                       "\nnormalized: " + format_poly(e.base(), lf.normalized) + "\n";
    if (e.is_split() && e.rank() > 1) {
        json rounds = json::array();
        for (const auto& r : initial_form_rounds(f, a.level)) {
            std::size_t rank = r.coeff(r.min_degree()).level.rank();
            std::string s = rank == 0 ? format_poly(e.base(), map_coeffs(r, [](const auto& c) { return c.unit; }))
                                      : format_poly(Extension<B>(e.base(), rank), r);
            rounds.push_back(s);
            text += "round: " + s + "\n";
        }
        j["rounds"] = rounds;
    }
    emit(o, j, text);
    return ok;
}

} // namespace

int cmd_initial_form(const Options& o) {
    return with_idyll(o, [&](const auto& b) -> int {
        using I = std::decay_t<decltype(b)>;
        if constexpr (is_extension<I>::value) {
            return initial_form_report(o, b, load_poly(b, o), load_at(b, o));
        } else if constexpr (std::is_same_v<I, OagIdyll>) {
            auto t = make_trop(b.rank());
            auto f = map_coeffs(load_poly(b, o), [](const OagValue& v) { return from_oag(v); });
            return initial_form_report(o, t, f, from_oag(load_at(b, o)));
        } else {
            throw unsupported_operation("initial forms need a tropical extension, got " + b.name());
        }
    });
}

int cmd_degree_bound(const Options& o) {
    return with_idyll(o, [&](const auto& b) -> int {
        auto f = load_poly(b, o);
        auto rep = degree_bound_check(b, f, parse_engine(o.engine));
        json roots = json::array();
        for (const auto& [a, m] : rep.roots) roots.push_back({{"root", b.format(a)}, {"multiplicity", m}});
        std::string text = "sum of multiplicities " + std::to_string(rep.total) + ", degree " +
                           std::to_string(rep.degree) + (rep.pass ? ": bound holds\n" : ": BOUND VIOLATED\n");
        emit(o, {{"idyll", b.name()}, {"total", rep.total}, {"degree", rep.degree}, {"pass", rep.pass}, {"roots", roots}},
             text);
        return rep.pass ? ok : mismatch;
    });
}

namespace {

struct Check {
    explicit Check(std::string n) : name(std::move(n)) {}
    std::string name;
    long long instances = 0;
    long long mismatches = 0;
    std::string first;
};

template <class E>
Polynomial<E> digits_poly(int mask, int base, int len, const std::vector<E>& alphabet) {
    std::vector<E> c;
    for (int i = 0; i < len; ++i, mask /= base) c.push_back(alphabet[static_cast<std::size_t>(mask % base)]);
    return Polynomial<E>(c);
}

} // namespace

int cmd_verify(const Options& o) {
    std::vector<Check> checks;
    SignIdyll sg;
    KrasnerIdyll kr;

    Check s{"sign: exhaustive vs closed vs search, degree <= 5"};
    for (int mask = 1; mask < 729; ++mask) {
        auto f = digits_poly(mask, 3, 6, sg.elements());
        for (const auto& a : sg.elements()) {
            ++s.instances;
            int x = exhaustive_multiplicity(sg, f, a), y = mult_closed_form(sg, f, a),
                z = multiplicity_search(sg, f, a).count;
            if (x != y || y != z) {
                if (!s.mismatches++) s.first = format_poly(sg, f) + " at " + sg.format(a);
            }
        }
    }
    checks.push_back(s);

    Check k{"krasner: exhaustive vs closed vs search, degree <= 6"};
    for (int mask = 1; mask < 128; ++mask) {
        auto f = digits_poly(mask, 2, 7, kr.elements());
        for (const auto& a : kr.elements()) {
            ++k.instances;
            int x = exhaustive_multiplicity(kr, f, a), y = mult_closed_form(kr, f, a),
                z = multiplicity_search(kr, f, a).count;
            if (x != y || y != z) {
                if (!k.mismatches++) k.first = format_poly(kr, f) + " at " + kr.format(a);
            }
        }
    }
    checks.push_back(k);

    Check t{"trop-real: search vs initial form vs grid oracle, degree <= 3"};
    auto tr = make_trop_real();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> lvl(-2, 2), coin(0, 3), deg(1, 3);
    for (int n = 0; n < 150; ++n) {
        std::vector<ExtElem<SignElem>> c;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i)
            c.push_back(i != d && coin(rng) == 0 ? tr.zero()
                                                 : tr.make(SignElem{coin(rng) % 2 ? 1 : -1}, OagValue{Rational(lvl(rng))}));
        Polynomial<ExtElem<SignElem>> f(c);
        for (const auto& a : root_candidates(tr, f)) {
            if (!a.nonzero) continue;
            ++t.instances;
            int m = mult_closed_form(tr, f, a);
            bool bad = multiplicity_search(tr, f, a).count != m;
            auto v = bounded_extension_oracle(tr, f, a, m);
            bad = bad || v.count > m || !v.conclusive;
            if (bad && !t.mismatches++) t.first = format_poly(tr, f) + " at " + tr.format(a);
        }
    }
    checks.push_back(t);

    Check p{"phase: null test vs exact twelfth-root oracle, length <= 4"};
    PhaseIdyll ph;
    std::vector<int> ks(12);
    for (int i = 0; i < 12; ++i) ks[static_cast<std::size_t>(i)] = i;
    idyll::detail::for_each_multiset(ks, 4, [&](const FormalSum<int>& sum) {
        std::vector<int> v(sum.begin(), sum.end());
        FormalSum<PhaseElem> s;
        for (int x : v) s.push(ph.at(Rational(x, 12)));
        ++p.instances;
        if (ph.is_null(s) != phase_null_oracle_12(v) && !p.mismatches++) p.first = ph.format(*s.begin());
    });
    checks.push_back(p);

    bool pass = true;
    json arr = json::array();
    std::string text;
    for (const auto& c : checks) {
        pass = pass && c.mismatches == 0;
        arr.push_back({{"name", c.name}, {"instances", c.instances}, {"mismatches", c.mismatches}});
        text += (c.mismatches ? "FAIL " : "ok   ") + c.name + " (" + std::to_string(c.instances) + " instances";
        text += c.mismatches ? ", first mismatch " + c.first + ")\n" : ")\n";
    }
    emit(o, {{"checks", arr}, {"pass", pass}}, text);
    return pass ? ok : mismatch;
}

int cmd_axioms(const Options& o) {
    return with_idyll(o, [&](const auto& b) -> int {
        using I = std::decay_t<decltype(b)>;
        std::vector<std::string> v;
        if constexpr (is_extension<I>::value) {
            v = check_extension_axioms(b, 500);
        } else if constexpr (EnumerableIdyll<I>) {
            v = check_idyll_axioms(b, 4);
        } else if constexpr (std::is_same_v<I, PhaseIdyll>) {
            std::vector<PhaseElem> carrier{b.zero()};
            for (int k = 0; k < 12; k += 2) carrier.push_back(b.at(Rational(k, 12)));
            v = check_idyll_axioms_on(b, carrier, 3);
        } else if constexpr (std::is_same_v<I, RationalField>) {
            v = check_idyll_axioms_on(b, {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(1, 2)}, 3);
        } else if constexpr (std::is_same_v<I, OagIdyll>) {
            std::vector<OagValue> carrier{OagValue::infinity(), b.one()};
            for (int x : {-1, 1}) {
                OagValue::coords_type c(b.rank());
                c[0] = Rational(x);
                carrier.push_back(OagValue(c));
            }
            v = check_idyll_axioms_on(b, carrier, 3);
        }
        json arr = json::array();
        std::string text;
        for (const auto& s : v) {
            arr.push_back(s);
            text += "violation: " + s + "\n";
        }
        if (v.empty()) text = b.name() + ": all axioms hold\n";
        emit(o, {{"idyll", b.name()}, {"violations", arr}, {"pass", v.empty()}}, text);
        return v.empty() ? ok : mismatch;
    });
}

} // namespace cli
