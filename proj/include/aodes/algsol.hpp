#pragma once

#include "aodes/puiseux.hpp"

namespace aodes {

/// Minimal polynomial family of an algebraic solution: every root function Y
/// of G(x + c, Y) = 0 solves the source equation, for every constant c.
struct AlgebraicSolutionFamily {
    MPA G;  // canonical representative, vars (x = 0, Y = 1); monic-normalized
    bool rational = true;  // true when all coefficients are rational
    int deg_x = 0;
    int deg_Y = 0;
    MP source_factor;  // the irreducible H_i it solves (2 vars)
};

/// Eq-style degree bounds: (deg_x, deg_Y) <= (deg_{u1} H, deg_{u0} H + deg_{u1} H).
std::pair<int, int> degree_bounds(const MP& H);

/// Implicit-differentiation criterion: G divides the numerator of
/// H(Y, -G_x/G_Y); exactness gate for reconstructed candidates.
bool verify_algebraic(const MPA& G, const MP& H);
bool verify_algebraic(const MP& G, const MP& H);

/// Decide/construct the algebraic-solution family of one irreducible factor
/// by reconstructing an annihilating polynomial from a Puiseux branch and
/// verifying it exactly. Empty result certifies non-existence within the
/// degree bounds.
std::optional<AlgebraicSolutionFamily> alg_sol(const MP& Hi, const Limits& lim = {});

/// Full pipeline over a system: reduce, strip, factor, alg_sol per factor,
/// plus the non-constant linear solutions as degree-(1,1) families.
std::vector<AlgebraicSolutionFamily> alg_solution_system(const DiffSystem& S,
                                                         const Limits& lim = {});

struct RationalSolution {
    UPoly<Rat> num, den;  // y(x) = num(x + c)/den(x + c), coprime, den monic
    int degree = 0;       // max(deg num, deg den)
};

/// Rational solutions via the deg_Y = 1 families; degree bounded by
/// deg_{u1}(H).
std::vector<RationalSolution> rational_solutions(const DiffSystem& S, const Limits& lim = {});

} // namespace aodes
