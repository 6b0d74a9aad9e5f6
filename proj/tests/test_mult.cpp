#include "catch_amalgamated.hpp"

#include <functional>
#include <random>

#include "idyll/division_rules.hpp"
#include "idyll/lift.hpp"
#include "idyll/mult.hpp"
#include "idyll/oracle.hpp"
#include "idyll/parse.hpp"

using namespace idyll;

namespace {

const KrasnerIdyll kr;
const SignIdyll sg;
const TropicalIdyll t1 = make_trop();
const TropicalRealIdyll tr = make_trop_real();

Polynomial<SignElem> sp(std::string_view s) { return parse_poly(sg, s); }
Polynomial<KrasnerElem> kp(std::string_view s) { return parse_poly(kr, s); }

const SignElem plus{1}, minus{-1};

template <class E>
Polynomial<E> random_ext_poly(std::mt19937_64& rng, const std::vector<E>& units_at_0, const std::function<E(const E&, int)>& at,
                              int max_deg) {
    std::uniform_int_distribution<int> deg(1, max_deg), lvl(-3, 3), coin(0, 3);
    std::uniform_int_distribution<std::size_t> pick(0, units_at_0.size() - 1);
    int d = deg(rng);
    std::vector<E> c;
    for (int i = 0; i <= d; ++i) {
        if (i != d && coin(rng) == 0) c.push_back(E{});
        else c.push_back(at(units_at_0[pick(rng)], lvl(rng)));
    }
    return Polynomial<E>(c);
}

Polynomial<ExtElem<SignElem>> random_tr(std::mt19937_64& rng, int max_deg) {
    return random_ext_poly<ExtElem<SignElem>>(
        rng, {tr.one(), tr.epsilon()},
        [](const ExtElem<SignElem>& u, int l) { return tr.make(u.unit, OagValue{Rational(l)}); }, max_deg);
}

Polynomial<ExtElem<KrasnerElem>> random_t(std::mt19937_64& rng, int max_deg) {
    return random_ext_poly<ExtElem<KrasnerElem>>(
        rng, {t1.one()}, [](const ExtElem<KrasnerElem>& u, int l) { return t1.make(u.unit, OagValue{Rational(l)}); },
        max_deg);
}

} // namespace

TEST_CASE("Descartes: 72 - 6x - 7x^2 + x^3 over the sign idyll") {
    auto fq = parse_poly(RationalField{}, "72 - 6*x - 7*x^2 + x^3");
    auto f = sign_of_poly(fq);
    CHECK(f == sp("1 - x - x^2 + x^3"));
    for (auto engine : {Engine::search, Engine::closed, Engine::both}) {
        CHECK(multiplicity(sg, f, plus, engine).count == 2);
        CHECK(multiplicity(sg, f, minus, engine).count == 1);
        CHECK(multiplicity(sg, f, SignElem{0}, engine).count == 0);
    }
    auto r = multiplicity_search(sg, f, plus);
    REQUIRE(r.chain.quotients.size() == 2);
    CHECK(verify_chain(sg, f, r.chain));
}

TEST_CASE("Newton: the same cubic over the tropical idyll") {
    auto fq = parse_poly(RationalField{}, "72 - 6*x - 7*x^2 + x^3");
    auto f = trop_of_rational(fq, 3);
    auto lv = [](long long v) { return t1.make(KrasnerElem{true}, OagValue{Rational(v)}); };
    CHECK(multiplicity(t1, f, lv(1), Engine::both).count == 2);
    CHECK(multiplicity(t1, f, lv(0), Engine::both).count == 1);
    CHECK(multiplicity(t1, f, lv(2), Engine::both).count == 0);
}

TEST_CASE("divide_once") {
    auto qs = divide_once(sg, sp("-1 + x^2"), plus);
    REQUIRE(qs.size() == 1);
    CHECK(qs[0] == sp("1 + x"));
    CHECK(divide_once(sg, sp("1 + x^2"), plus).empty());
    auto kq = divide_once(kr, kp("1 + x + x^2"), kr.one());
    CHECK(kq == std::vector<Polynomial<KrasnerElem>>{kp("1 + x")});
    for (const auto& g : kq) CHECK(factor_check(kr, kp("1 + x + x^2"), kr.one(), g));
    CHECK(kq == exhaustive_quotients(kr, kp("1 + x + x^2"), kr.one()));
}

TEST_CASE("roots through evaluation and factorization agree on pastures") {
    for (int mask = 1; mask < 27 * 9; ++mask) {
        std::vector<SignElem> c;
        for (int m = mask, i = 0; i < 5; ++i, m /= 3) c.push_back(SignElem{m % 3 == 2 ? -1 : m % 3});
        Polynomial<SignElem> f(c);
        if (f.is_zero()) continue;
        for (const auto& a : sg.elements()) {
            bool by_search = false;
            detail::Budget budget{100000, false};
            for_each_quotient(sg, f, a, budget, [&](const auto&) {
                by_search = true;
                return false;
            });
            if (is_zero_element(a)) by_search = is_zero_element(f.coeff(0));
            REQUIRE(is_root(sg, f, a) == by_search);
        }
    }
}

TEST_CASE("phase idyll: x^2 + x + 1 is rooted on a whole arc") {
    PhaseIdyll ph;
    auto f = parse_poly(ph, "1 + x + x^2");
    for (int k = 1; k < 24; ++k) {
        Rational t(k, 24);
        bool inside = t > Rational(1, 4) && t < Rational(3, 4);
        CHECK(is_root(ph, f, ph.at(t)) == inside);
    }
    CHECK_FALSE(is_root(ph, f, ph.at(Rational(1, 4))));
    CHECK_FALSE(is_root(ph, f, ph.at(Rational(3, 4))));
    CHECK(is_root(ph, f, ph.at(Rational(1, 3))));
}

TEST_CASE("closed forms agree with the exhaustive oracle over S and K") {
    for (int mask = 1; mask < 729; ++mask) {
        std::vector<SignElem> c;
        for (int m = mask, i = 0; i < 6; ++i, m /= 3) c.push_back(SignElem{m % 3 == 2 ? -1 : m % 3});
        Polynomial<SignElem> f(c);
        for (const auto& a : sg.elements()) REQUIRE(exhaustive_multiplicity(sg, f, a) == mult_closed_form(sg, f, a));
    }
    for (int mask = 1; mask < 128; ++mask) {
        std::vector<KrasnerElem> c;
        for (int i = 0; i < 7; ++i) c.push_back(KrasnerElem{((mask >> i) & 1) != 0});
        Polynomial<KrasnerElem> f(c);
        for (const auto& a : kr.elements()) REQUIRE(exhaustive_multiplicity(kr, f, a) == mult_closed_form(kr, f, a));
    }
}

TEST_CASE("search agrees with closed forms over finite idylls") {
    for (int mask = 1; mask < 729; ++mask) {
        std::vector<SignElem> c;
        for (int m = mask, i = 0; i < 6; ++i, m /= 3) c.push_back(SignElem{m % 3 == 2 ? -1 : m % 3});
        Polynomial<SignElem> f(c);
        for (const auto& a : sg.elements()) REQUIRE(multiplicity_search(sg, f, a).count == mult_closed_form(sg, f, a));
    }
}

TEST_CASE("search agrees with the initial-form reduction over T and TR") {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 300; ++n) {
        auto f = random_tr(rng, 4);
        for (const auto& a : root_candidates(tr, f)) {
            auto r = multiplicity(tr, f, a, Engine::both);
            REQUIRE(verify_chain(tr, f, r.chain));
        }
        auto g = random_t(rng, 4);
        for (const auto& a : root_candidates(t1, g)) REQUIRE_NOTHROW(multiplicity(t1, g, a, Engine::both));
    }
}

TEST_CASE("grid oracle confirms search over TR") {
    std::mt19937_64 rng(17);
    int conclusive = 0;
    for (int n = 0; n < 60; ++n) {
        auto f = random_tr(rng, 3);
        for (const auto& a : root_candidates(tr, f)) {
            if (!a.nonzero) continue;
            int m = mult_closed_form(tr, f, a);
            auto v = bounded_extension_oracle(tr, f, a, m);
            REQUIRE(v.count <= m);
            if (v.conclusive) ++conclusive;
        }
    }
    CHECK(conclusive > 0);
}

TEST_CASE("multiplicity at zero and over OAG") {
    auto f = sp("x^2 - x^3");
    CHECK(multiplicity(sg, f, SignElem{0}, Engine::both).count == 2);
    auto r = multiplicity_search(sg, f, SignElem{0});
    CHECK(verify_chain(sg, f, r.chain));
    OagIdyll t(1);
    auto g = parse_poly(t, "2 + 1*x + 0*x^2 + 0*x^3");
    CHECK(mult_closed_form(t, g, OagValue{1}) == 2);
    CHECK(multiplicity_search(t, g, OagValue{1}).count == 2);
    OagIdyll t2(2);
    auto h = parse_poly(t2, "(3,3) + (2,2)*x + (1,1)*x^2 + (0,1)*x^3 + (0,0)*x^4");
    CHECK(mult_closed_form(t2, h, OagValue{1, 1}) == 2);
    CHECK(multiplicity(make_trop(2), parse_poly(make_trop(2), "(3,3) + (2,2)*x + (1,1)*x^2 + (0,1)*x^3 + (0,0)*x^4"),
                       make_trop(2).make(KrasnerElem{true}, OagValue{1, 1}), Engine::both)
              .count == 2);
}

TEST_CASE("Catalan equation over S[Q]") {
    auto f = parse_poly(tr, "1 - x + 1^1*x^2");
    auto at = [](int u, long long lv) { return tr.make(SignElem{u}, OagValue{Rational(lv)}); };
    CHECK(multiplicity(tr, f, at(1, 0), Engine::both).count == 1);
    CHECK(multiplicity(tr, f, at(1, -1), Engine::both).count == 1);
    CHECK(multiplicity(tr, f, at(-1, 0), Engine::both).count == 0);
    CHECK(multiplicity(tr, f, at(-1, -1), Engine::both).count == 0);
    auto rep = degree_bound_check(tr, f);
    CHECK(rep.total == 2);
}

TEST_CASE("lifting initial-form factorizations") {
    auto f = parse_poly(tr, "-1 + x + 1^1*x^2 - x^3 + x^4");
    auto a = tr.one();
    auto lf = initial_form_at(tr, f, a);
    CHECK(lf.normalized == sp("-1 + x - x^3 + x^4"));
    // 1 + x^3 leaves two consecutive zeros in the middle of the quotient.
    auto g = sp("1 + x^3");
    REQUIRE(factor_check(sg, lf.normalized, plus, g));
    auto r = lift_factorization(tr, f, a, g);
    CHECK(factor_check(tr, f, a, r.quotient));
    CHECK(normalized_initial_form(tr, r.quotient, a, r.next_rep) == g);

    CHECK_THROWS_AS(lift_factorization(tr, f, a, sp("1 + x")), precondition_error);
    CHECK_THROWS_AS(lift_factorization(tr, f, tr.zero(), g), precondition_error);
}

TEST_CASE("lift chains reach the full multiplicity") {
    std::mt19937_64 rng(29);
    int lifted = 0;
    for (int n = 0; n < 300; ++n) {
        auto f = random_tr(rng, 5);
        for (const auto& a : root_candidates(tr, f)) {
            if (!a.nonzero) continue;
            auto chain = lift_chain(tr, f, a);
            REQUIRE(verify_chain(tr, f, chain));
            REQUIRE(static_cast<int>(chain.quotients.size()) == mult_closed_form(tr, f, a));
            lifted += static_cast<int>(chain.quotients.size());
        }
        auto g = random_t(rng, 5);
        for (const auto& a : root_candidates(t1, g)) {
            if (!a.nonzero) continue;
            auto chain = lift_chain(t1, g, a);
            REQUIRE(verify_chain(t1, g, chain));
            REQUIRE(static_cast<int>(chain.quotients.size()) == mult_closed_form(t1, g, a));
        }
    }
    CHECK(lifted > 100);
}

TEST_CASE("explicit division rules") {
    auto k = kp("x + x^3 + x^4");
    auto kq = krasner_quotient(k);
    CHECK(kq == kp("x + x^2 + x^3"));
    CHECK(factor_check(kr, k, kr.one(), kq));
    CHECK(mult_closed_form(kr, kq, kr.one()) == mult_closed_form(kr, k, kr.one()) - 1);

    auto f = sp("1 - x + x^2 - x^3 - x^4 - x^5 + x^6");
    auto g = sign_negative_root_quotient(f);
    CHECK(g == sp("1 - x + x^2 - x^3 - x^4 + x^5"));
    CHECK(factor_check(sg, f, minus, g));

    auto h = sp("1 + x + x^2 - x^3 + x^4 - x^5");
    auto hq = sign_positive_root_quotient(h);
    CHECK(hq == sp("-1 - x - x^2 + x^3 - x^4"));
    CHECK(factor_check(sg, h, plus, hq));

    for (int mask = 1; mask < 729; ++mask) {
        std::vector<SignElem> c;
        for (int m = mask, i = 0; i < 6; ++i, m /= 3) c.push_back(SignElem{m % 3 == 2 ? -1 : m % 3});
        Polynomial<SignElem> p(c);
        int m1 = mult_closed_form(sg, p, plus);
        if (m1 > 0) {
            auto q = sign_positive_root_quotient(p);
            REQUIRE(factor_check(sg, p, plus, q));
            REQUIRE(mult_closed_form(sg, q, plus) == m1 - 1);
        } else {
            REQUIRE_THROWS_AS(sign_positive_root_quotient(p), precondition_error);
        }
        bool gapless = true;
        for (int i = p.min_degree(); i <= p.degree(); ++i) gapless = gapless && p.coeff(i).value != 0;
        int m2 = mult_closed_form(sg, p, minus);
        if (gapless && m2 > 0) {
            auto q = sign_negative_root_quotient(p);
            REQUIRE(factor_check(sg, p, minus, q));
            REQUIRE(mult_closed_form(sg, q, minus) == m2 - 1);
        }
    }

    OagIdyll t(1);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> val(-3, 3), deg(1, 6), coin(0, 3);
    for (int n = 0; n < 500; ++n) {
        std::vector<OagValue> c;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i) c.push_back(i != d && i != 0 && coin(rng) == 0 ? OagValue::infinity() : OagValue{Rational(val(rng))});
        Polynomial<OagValue> p(c);
        for (const auto& a : root_candidates(t, p)) {
            if (a.is_infinite()) continue;
            int m = mult_closed_form(t, p, a);
            REQUIRE(m > 0);
            auto q = tropical_quotient(p, a);
            REQUIRE(factor_check(t, p, a, q));
            REQUIRE(mult_closed_form(t, q, a) == m - 1);
        }
    }
}

TEST_CASE("search budget") {
    auto f = sp("1 - x + x^2 - x^3 + x^4 - x^5 + x^6");
    SearchOptions tight{5, false};
    CHECK_THROWS_AS(multiplicity_search(sg, f, plus, tight), resource_error);
    SearchOptions trunc{5, true};
    auto r = multiplicity_search(sg, f, plus, trunc);
    CHECK(r.truncated);
    CHECK(r.count <= 6);
    CHECK(verify_chain(sg, f, r.chain));
}

TEST_CASE("degree bound on samples") {
    std::mt19937_64 rng(41);
    for (int n = 0; n < 300; ++n) {
        auto f = random_tr(rng, 6);
        REQUIRE(degree_bound_check(tr, f).pass);
        auto g = random_t(rng, 6);
        REQUIRE(degree_bound_check(t1, g).pass);
    }
    // Over T, the bound is attained: every edge contributes its width.
    auto f = parse_poly(t1, "2 + 1*x + 0*x^2 + 0*x^3 + 2*x^4 + 1*x^5");
    auto rep = degree_bound_check(t1, f);
    CHECK(rep.total == 5);
    CHECK(rep.roots.size() == 3);
}

TEST_CASE("substitution moves roots: mult_a f(cx) = mult_{ca} f") {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> lvl(-2, 2), coin(0, 1);
    for (int n = 0; n < 300; ++n) {
        auto f = random_tr(rng, 5);
        auto c = tr.make(SignElem{coin(rng) ? 1 : -1}, OagValue{Rational(lvl(rng))});
        auto g = monomial_substitute(tr, f, c);
        for (const auto& a : root_candidates(tr, g)) {
            if (!a.nonzero) continue;
            CHECK(multiplicity_search(tr, g, a).count == multiplicity_search(tr, f, tr.mul(c, a)).count);
        }
    }
}

TEST_CASE("multiplicities can only grow along the sign and valuation maps") {
    RationalField q;
    auto fq = parse_poly(q, "72 - 6*x - 7*x^2 + x^3");
    int positive = 0, negative = 0;
    for (long long r : {4, 6, -3}) {
        int m = multiplicity_search(q, fq, Rational(r)).count;
        CHECK(m == 1);
        (r > 0 ? positive : negative) += m;
    }
    CHECK(multiplicity_search(q, fq, Rational(5)).count == 0);
    auto fs = sign_of_poly(fq);
    CHECK(positive <= mult_closed_form(sg, fs, plus));
    CHECK(negative <= mult_closed_form(sg, fs, minus));
    // 2-adic valuations of 4, 6, -3 are 2, 1, 0.
    auto ft = trop_of_rational(fq, 2);
    for (long long v : {0, 1, 2}) CHECK(mult_closed_form(t1, ft, t1.make(KrasnerElem{true}, OagValue{v})) >= 1);
}

TEST_CASE("a truncated search never exceeds the initial-form multiplicity") {
    std::mt19937_64 rng(73);
    for (int n = 0; n < 300; ++n) {
        auto f = random_tr(rng, 6);
        for (const auto& a : root_candidates(tr, f)) {
            if (!a.nonzero) continue;
            auto r = multiplicity_search(tr, f, a, SearchOptions{20, true});
            CHECK(r.count <= mult_closed_form(tr, f, a));
            CHECK(verify_chain(tr, f, r.chain));
        }
    }
}

TEST_CASE("level-normalized and split initial forms agree") {
    std::mt19937_64 rng(79);
    auto tr2 = make_trop_real(2);
    std::uniform_int_distribution<int> lvl(-2, 2), deg(1, 5), coin(0, 3), sign(0, 1);
    for (int n = 0; n < 300; ++n) {
        auto f = random_tr(rng, 5);
        for (const auto& a : root_candidates(tr, f))
            if (a.nonzero)
                CHECK(initial_form_at(tr, f, a).normalized ==
                      monomial_substitute(sg, initial_form_recursive(f, a.level), a.unit));

        std::vector<ExtElem<SignElem>> c;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i)
            c.push_back(i != d && coin(rng) == 0 ? tr2.zero()
                                                 : tr2.make(SignElem{sign(rng) ? 1 : -1},
                                                            OagValue{Rational(lvl(rng)), Rational(lvl(rng))}));
        Polynomial<ExtElem<SignElem>> g(c);
        for (const auto& a : root_candidates(tr2, g))
            if (a.nonzero)
                CHECK(initial_form_at(tr2, g, a).normalized ==
                      monomial_substitute(sg, initial_form_recursive(g, a.level), a.unit));
    }
}
