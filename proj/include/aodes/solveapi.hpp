#pragma once

#include <optional>
#include <string>

#include "aodes/algsol.hpp"
#include "aodes/oracle.hpp"
#include "aodes/parser.hpp"

namespace aodes {

struct CommandResult {
    int exit_code = 0;
    std::string text;  // human-readable report
    std::string json;  // machine-readable (same content), JSON-encoded
};

struct SolveOptions {
    std::optional<Rat> order;  // default: max(3, deg H*) plus the determinacy bound
    bool at_infinity = false;
    std::optional<std::pair<Rat, Rat>> point;  // x0, y0
};

CommandResult run_reduce(const std::string& input);
CommandResult run_triangularize(const std::string& input);
CommandResult run_solve(const std::string& input, const SolveOptions& opts);
CommandResult run_solve_algebraic(const std::string& input, bool rational_only);
CommandResult run_verify(const std::string& input, const std::string& truncation_text,
                         const Rat& order);

} // namespace aodes
