#pragma once

#include "aodes/diffsys.hpp"
#include "aodes/series.hpp"

namespace aodes {

struct NewtonRootInfo {
    ExtRoot root;  // field + value + multiplicity
    std::optional<std::pair<AlgNum, AlgNum>> indicial;  // L(nu) = A + B*nu in root's field
    std::optional<Rat> indicial_root;                   // rational root of L, if any
};

struct NewtonStep {
    Rat mu;                   // candidate leading exponent (> 0)
    UPoly<AlgNum> char_poly;  // phi(c) = sum over the edge of a * mu^j * c^(i+j)
    std::vector<NewtonRootInfo> roots;  // non-zero roots only
};

/// Newton polygon analysis of a local bivariate equation E(z, w) with w = z',
/// under the ansatz z = c x^mu: every mu > 0 where the minimal valuation
/// (i+j)mu - j is attained at least twice, with the characteristic polynomial
/// and its non-zero roots. Steps sorted by increasing mu. Empty result means
/// no branch passes through z(0) = 0.
std::vector<NewtonStep> newton_step(const MPA& Htilde, const NumberFieldPtr& field,
                                    const Limits& lim = {});

/// Convenience overload for rational input (u0 = z, u1 = w).
std::vector<NewtonStep> newton_step(const MP& Htilde, const Limits& lim = {});

struct PuiseuxResult {
    std::vector<SolutionFamily> families;
    std::vector<PuiseuxTruncation> critical;  // includes y(0) = infinity branches
    std::vector<std::string> warnings;
};

/// All formal Puiseux series solutions of H(y, y') = 0 at x = 0: the generic
/// one-parameter family per irreducible factor plus the branches through each
/// critical initial value and through y(0) = infinity. H must be squarefree
/// with no univariate factors.
PuiseuxResult puiseux_solve(const MP& H, const Rat& order, const Limits& lim = {});

/// Solution truncations expanded at x = infinity (descending exponents).
std::vector<PuiseuxTruncation> puiseux_solve_infinity(const MP& H, const Rat& order,
                                                      const Limits& lim = {});

struct LinearSolution {
    AlgNum alpha;
    bool beta_free = false;
    AlgNum beta;  // meaningful when !beta_free
};

/// Non-constant linear solutions y = alpha x + beta of the system, by exact
/// elimination of the ansatz equations.
std::vector<LinearSolution> linear_solutions(const DiffSystem& S, const Limits& lim = {});

struct SolutionSet {
    ReducedEquation reduction;
    MP h_star;  // H after factoring out univariate factors and squarefree part
    std::vector<SolutionFamily> families;
    std::vector<PuiseuxTruncation> critical;
    std::vector<LinearSolution> linear;
    std::vector<std::string> warnings;
};

/// Algorithm "reduce + local solve + linear ansatz" end to end.
SolutionSet puiseux_solve_system(const DiffSystem& S, const Rat& order, const Limits& lim = {});

/// Solution truncations through y(x0) = y0, expanded in powers of (x - x0).
std::vector<PuiseuxTruncation> solve_at_point(const DiffSystem& S, const Rat& x0, const Rat& y0,
                                              const Rat& order, const Limits& lim = {});

/// Specialize a family at a rational y0; one truncation per root class of the
/// slope relation H_i(y0, c) = 0.
std::vector<PuiseuxTruncation> specialize_family(const SolutionFamily& fam, const Rat& y0,
                                                 const Limits& lim = {});

/// Admissibility of a rational y0 for a family (no constraint vanishes).
bool family_admits(const SolutionFamily& fam, const Rat& y0);

} // namespace aodes
