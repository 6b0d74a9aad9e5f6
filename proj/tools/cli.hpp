#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cli {

enum Exit { ok = 0, other = 1, parse = 2, mismatch = 3, resource = 4 };

struct Options {
    std::string idyll = "sign";
    std::string poly;
    std::string at;
    std::string engine = "search";
    std::string format = "ascii";
    std::string demo;
    std::uint32_t prime = 0;
    std::size_t rank = 0;
    bool json = false;
    bool certificate = false;
};

int cmd_mult(const Options& o);
int cmd_roots(const Options& o);
int cmd_divide(const Options& o);
int cmd_lift(const Options& o);
int cmd_newton(const Options& o);
int cmd_initial_form(const Options& o);
int cmd_degree_bound(const Options& o);
int cmd_verify(const Options& o);
int cmd_axioms(const Options& o);

std::vector<std::string> demo_names();
int run_demo(const Options& o);

/// Prints either the JSON document or the text lines.
void emit(const Options& o, const nlohmann::json& j, const std::string& text);

} // namespace cli
