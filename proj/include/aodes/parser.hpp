#pragma once

#include <string>

#include "aodes/diffsys.hpp"
#include "aodes/series.hpp"

namespace aodes {

struct SourceSystem {
    std::string raw_text;
    DiffSystem parsed;
    int max_derivative = 0;
    int equation_count = 0;
};

/// Grammar: system := eq (";" eq)* ; eq := expr "=" expr ;
/// expr over rationals in y, y', y'', ..., y'''' or y^(k); whitespace-free
/// tokens, explicit '*', '^' with non-negative integer exponents; rational
/// literals p/q. Any occurrence of x raises Autonomy; unknown identifiers
/// raise Parse with line/column.
SourceSystem parse_system(const std::string& text, const Limits& lim = Limits::from_env());

/// Canonical form whose re-parse is the identical system.
std::string print_system(const DiffSystem& S);

/// Truncation input for the verify command:
///   series := term (('+'|'-') term)*
///   term   := coeff | coeff '*' xpow | xpow
///   xpow   := 'x' | 'x^' rational | 'x^(' rational ')'
///   coeff  := rational | 'alg(' poly-in-t ',' '[' rational ',' rational '])'
PuiseuxTruncation parse_truncation(const std::string& text, const Limits& lim = Limits::from_env());

} // namespace aodes
