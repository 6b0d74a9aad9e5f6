#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "idyll/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Root multiplicities over idylls, hyperfields and tropical extensions"};
    app.require_subcommand(1);
    cli::Options o;

    auto common = [&](CLI::App* sub, bool needs_poly, bool needs_at) {
        sub->add_option("--idyll", o.idyll, "idyll name, e.g. sign, trop, trop-real:rank-2, ext:field:GF(5):1")
            ->capture_default_str();
        auto* p = sub->add_option("--poly", o.poly, "polynomial text, or canonical JSON");
        if (needs_poly) p->required();
        auto* a = sub->add_option("--at", o.at, "element of the idyll");
        if (needs_at) a->required();
        sub->add_option("--prime", o.prime, "read --poly over Q and map it by the p-adic valuation (and signs)");
        sub->add_option("--rank", o.rank, "rank for trop, trop-real and oag names without one");
        sub->add_option("--engine", o.engine, "search, closed or both")->capture_default_str();
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_flag("--certificate", o.certificate, "emit the factorization chain as JSON");
    };

    struct Entry {
        const char* name;
        const char* help;
        bool poly, at;
        int (*fn)(const cli::Options&);
    };
    const Entry entries[] = {
        {"mult", "multiplicity of --at as a root of --poly", true, true, cli::cmd_mult},
        {"roots", "all roots with their multiplicities", true, false, cli::cmd_roots},
        {"divide", "all quotients of --poly by (x - at)", true, true, cli::cmd_divide},
        {"lift", "lift the initial-form factorization chain at --at", true, true, cli::cmd_lift},
        {"initial-form", "initial form of --poly at --at", true, true, cli::cmd_initial_form},
        {"degree-bound", "sum of multiplicities against the degree", true, false, cli::cmd_degree_bound},
    };
    int (*chosen)(const cli::Options&) = nullptr;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        common(sub, e.poly, e.at);
        sub->callback([&chosen, fn = e.fn] { chosen = fn; });
    }

    auto* newton = app.add_subcommand("newton", "Newton polygon of a rank-1 valued polynomial");
    common(newton, true, false);
    newton->add_option("--format", o.format, "ascii, svg or json")
        ->check(CLI::IsMember({"ascii", "svg", "json"}))
        ->capture_default_str();
    newton->callback([&] { chosen = cli::cmd_newton; });

    auto* verify = app.add_subcommand("verify", "run the oracle suite");
    verify->add_flag("--json", o.json, "machine-readable output");
    verify->callback([&] { chosen = cli::cmd_verify; });

    auto* axioms = app.add_subcommand("axioms", "check the idyll axioms");
    axioms->add_option("--idyll", o.idyll, "idyll name")->required();
    axioms->add_option("--rank", o.rank, "rank for names without one");
    axioms->add_flag("--json", o.json, "machine-readable output");
    axioms->callback([&] { chosen = cli::cmd_axioms; });

    auto* demo = app.add_subcommand("demo", "run a worked example");
    demo->add_option("name", o.demo, "demo name")->required()->check(CLI::IsMember(cli::demo_names()));
    demo->add_flag("--json", o.json, "machine-readable output");
    demo->callback([&] { chosen = cli::run_demo; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? cli::ok : cli::parse;
    }

    try {
        return chosen(o);
    } catch (const idyll::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return cli::parse;
    } catch (const idyll::verification_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return cli::mismatch;
    } catch (const idyll::resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return cli::resource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::other;
    }
}
