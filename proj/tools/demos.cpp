#include <algorithm>
#include <functional>
#include <iostream>
#include <map>

#include "cli.hpp"
#include "idyll/division_rules.hpp"
#include "idyll/lift.hpp"
#include "idyll/mult.hpp"
#include "idyll/newton.hpp"
#include "idyll/parse.hpp"

namespace cli {

using namespace idyll;
using nlohmann::json;

namespace {

struct Report {
    json rows = json::array();
    std::string text;
    bool pass = true;

    void line(const std::string& what, const std::string& expected, const std::string& computed) {
        bool ok = expected == computed;
        pass = pass && ok;
        rows.push_back({{"check", what}, {"expected", expected}, {"computed", computed}, {"ok", ok}});
        text += (ok ? "ok   " : "FAIL ") + what + ": expected " + expected + ", computed " + computed + "\n";
    }
    void note(const std::string& s) { text += "     " + s + "\n"; }
};

const char* kCubic = "72 - 6*x - 7*x^2 + x^3";

template <class I>
std::string root_valuations(const I& b, const Polynomial<typename I::element>& f) {
    std::vector<OagValue> vals;
    for (const auto& [a, m] : degree_bound_check(b, f, Engine::both).roots)
        for (int k = 0; k < m; ++k) vals.push_back(b.valuation(a));
    std::sort(vals.begin(), vals.end());
    std::string out;
    for (const auto& v : vals) out += (out.empty() ? "" : ",") + b.format_level(v);
    return out;
}

void descartes(Report& r) {
    SignIdyll s;
    auto f = sign_of_poly(parse_poly(RationalField{}, kCubic));
    r.note("f = " + std::string(kCubic) + ", signs " + format_poly(s, f));
    for (auto [name, e] : {std::pair{"search", Engine::search}, std::pair{"closed", Engine::closed}}) {
        r.line(std::string("mult_+1 (") + name + ")", "2", std::to_string(multiplicity(s, f, SignElem{1}, e).count));
        r.line(std::string("mult_-1 (") + name + ")", "1", std::to_string(multiplicity(s, f, SignElem{-1}, e).count));
    }
}

void newton_p(Report& r, std::uint32_t p, const std::string& expected_poly, const std::string& expected_vals) {
    auto t = make_trop();
    auto f = trop_of_rational(parse_poly(RationalField{}, kCubic), p);
    r.line("trop of f at p = " + std::to_string(p), format_poly(t, parse_poly(t, expected_poly)), format_poly(t, f));
    r.line("root valuations", expected_vals, root_valuations(t, f));
    r.text += render_ascii(newton_polygon(t, f));
}

void catalan(Report& r) {
    auto tr = make_trop_real();
    auto f = parse_poly(tr, "1 - x + 1^1*x^2");
    r.note("f(C) = 1 - C + t C^2 over S[Q]");
    r.line("In_0 f", "1 + -1*x^1", format_poly(SignIdyll{}, initial_form_split(tr, f, OagValue{0})));
    r.line("In_-1 f", "-1*x^1 + 1*x^2", format_poly(SignIdyll{}, initial_form_split(tr, f, OagValue{-1})));
    auto at = [&](int u, long long lv) { return tr.make(SignElem{u}, OagValue{Rational(lv)}); };
    r.line("mult at 1^0", "1", std::to_string(multiplicity(tr, f, at(1, 0), Engine::both).count));
    r.line("mult at 1^-1", "1", std::to_string(multiplicity(tr, f, at(1, -1), Engine::both).count));
    std::string roots;
    for (const auto& [a, m] : degree_bound_check(tr, f).roots) roots += (roots.empty() ? "" : ",") + tr.format(a);
    r.line("roots", "1^0,1^-1", roots);
}

void polygon(Report& r) {
    auto t = make_trop();
    auto f = parse_poly(t, "2 + 1*x + 0*x^2 + 0*x^3 + 2*x^4 + 1*x^5");
    auto np = newton_polygon(t, f);
    std::string slopes, widths;
    for (const auto& e : np.edges) {
        slopes += (slopes.empty() ? "" : ",") + to_string(e.slope);
        widths += (widths.empty() ? "" : ",") + std::to_string(e.width());
    }
    r.line("slopes", "-1,0,1/2", slopes);
    r.line("widths", "2,1,2", widths);
    KrasnerIdyll k;
    r.line("In_1", "1 + 1*x^1 + 1*x^2", format_poly(k, initial_form_split(t, f, OagValue{1})));
    r.line("In_0", "1*x^2 + 1*x^3", format_poly(k, initial_form_split(t, f, OagValue{0})));
    r.line("In_-1/2 (computed argmin)", "1*x^3 + 1*x^5",
           format_poly(k, initial_form_split(t, f, OagValue{make_rational(-1, 2)})));
    r.text += render_ascii(np);
}

void higher_rank(Report& r) {
    auto t2 = make_trop(2);
    auto f = parse_poly(t2, "(3,3) + (2,2)*x + (1,1)*x^2 + (0,1)*x^3 + (0,0)*x^4");
    auto rounds = initial_form_rounds(f, OagValue{1, 1});
    r.line("first round over T", "1^3 + 1^2*x^1 + 1^1*x^2 + 1^1*x^3", format_poly(make_trop(), rounds.at(0)));
    r.line("second round over K", "1 + 1*x^1 + 1*x^2", format_poly(KrasnerIdyll{}, initial_form_recursive(f, OagValue{1, 1})));
    auto a = t2.make(KrasnerElem{true}, OagValue{1, 1});
    r.line("mult at (1,1)", "2", std::to_string(multiplicity(t2, f, a, Engine::both).count));
}

void division_rules(Report& r) {
    KrasnerIdyll k;
    SignIdyll s;
    auto kf = parse_poly(k, "x + x^3 + x^4");
    auto kq = krasner_quotient(kf);
    r.line("Krasner quotient", "1*x^1 + 1*x^2 + 1*x^3", format_poly(k, kq));
    r.line("Krasner factor check", "true", factor_check(k, kf, k.one(), kq) ? "true" : "false");

    auto f = parse_poly(s, "1 - x + x^2 - x^3 - x^4 - x^5 + x^6");
    auto g = parse_poly(s, "1 - x + x^2 - x^3 - x^4 + x^5");
    r.line("negative root display", "true", factor_check(s, f, SignElem{-1}, g) ? "true" : "false");
    r.line("negative root rule", format_poly(s, g), format_poly(s, sign_negative_root_quotient(f)));
    r.line("mult_-1 drops by one", std::to_string(mult_closed_form(s, f, SignElem{-1}) - 1),
           std::to_string(mult_closed_form(s, g, SignElem{-1})));

    auto h = parse_poly(s, "1 + x + x^2 - x^3 + x^4 - x^5");
    auto hq = parse_poly(s, "-1 - x - x^2 + x^3 - x^4");
    r.line("positive root display", "true", factor_check(s, h, SignElem{1}, hq) ? "true" : "false");
    r.line("positive root rule", format_poly(s, hq), format_poly(s, sign_positive_root_quotient(h)));
    r.line("mult_+1 drops by one", std::to_string(mult_closed_form(s, h, SignElem{1}) - 1),
           std::to_string(mult_closed_form(s, hq, SignElem{1})));

    OagIdyll t(1);
    auto tf = parse_poly(t, "2 + 1*x + 0*x^2 + 0*x^3 + 2*x^4 + 1*x^5");
    auto tq = tropical_quotient(tf, OagValue{1});
    r.line("tropical staircase check", "true", factor_check(t, tf, OagValue{1}, tq) ? "true" : "false");
    r.line("tropical mult drops by one", std::to_string(mult_closed_form(t, tf, OagValue{1}) - 1),
           std::to_string(mult_closed_form(t, tq, OagValue{1})));
}

void jell(Report& r) {
    PhaseIdyll ph;
    auto f = parse_poly(ph, "1 + x + x^2");
    for (auto [num, den] : {std::pair{1, 4}, std::pair{1, 3}, std::pair{3, 8}, std::pair{1, 2}, std::pair{5, 8},
                            std::pair{2, 3}, std::pair{3, 4}, std::pair{1, 5}}) {
        Rational turn(num, den);
        bool inside = turn > Rational(1, 4) && turn < Rational(3, 4);
        r.line("is_root at @" + to_string(turn), inside ? "true" : "false",
               is_root(ph, f, ph.at(turn)) ? "true" : "false");
    }
}

const std::map<std::string, std::function<void(Report&)>>& demos() {
    static const std::map<std::string, std::function<void(Report&)>> table{
        {"descartes", descartes},
        {"newton-p2", [](Report& r) { newton_p(r, 2, "3 + 1*x + 0*x^2 + 0*x^3", "0,1,2"); }},
        {"newton-p3", [](Report& r) { newton_p(r, 3, "2 + 1*x + 0*x^2 + 0*x^3", "0,1,1"); }},
        {"catalan", catalan},
        {"newton-polygon", polygon},
        {"higher-rank", higher_rank},
        {"division-rules", division_rules},
        {"jell", jell},
    };
    return table;
}

} // namespace

std::vector<std::string> demo_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : demos()) out.push_back(name);
    return out;
}

int run_demo(const Options& o) {
    Report r;
    demos().at(o.demo)(r);
    emit(o, {{"demo", o.demo}, {"checks", r.rows}, {"pass", r.pass}}, r.text + (r.pass ? "PASS\n" : "FAIL\n"));
    return r.pass ? ok : mismatch;
}

} // namespace cli
