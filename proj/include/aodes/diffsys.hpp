#pragma once

#include <vector>

#include "aodes/chains.hpp"

namespace aodes {

/// A system of autonomous algebraic ODEs in one unknown: variable u_i stands
/// for the i-th derivative of y, so the ambient polynomial ring has order+1
/// variables.
struct DiffSystem {
    int order = 0;        // m >= 1
    std::vector<MP> eqs;  // each resized to order+1 variables, none zero

    static DiffSystem make(std::vector<MP> eqs, int order);
    int nvars() const { return order + 1; }
};

/// Formal total derivative: sum_i dF/du_i * u_{i+1}.
MP total_derivative(const MP& F);

/// D^(j-1) G1 = separant * u_j + remainder, remainder of order <= j-1.
struct RittSplit {
    MP separant;   // dG1/du1, in u0..u1
    MP remainder;  // in u0..u_{j-1}
};
RittSplit ritt_split(const MP& G1, int j);

struct MPFrac {
    MP num, den;
};

/// B_2..B_m of the reduction: rational functions in (u0,u1) with separant-
/// power denominators; entry k is B_{k+2}.
std::vector<MPFrac> compute_B(const MP& G1, int m);

/// Substitute fractions for selected variables (nullopt keeps the variable);
/// returns a single reduced fraction.
MPFrac substitute_fractions(const MP& F, const std::vector<std::optional<MPFrac>>& values);

/// Dimension-one chain in the shape G_j(u0..u_j), j = 1..m, with lv(G_j)=u_j.
struct DiffChain {
    RegularChain chain;
    MP g1_normalized;  // squarefree, univariate-factor-free (may be constant)
};

struct ChainReduction {
    MP h_chain;                    // gcd(H_1..H_m), primitive; constant 1 possible
    std::vector<MP> intermediates; // H_1..H_m as computed
};
ChainReduction chain_reduced_equation(const DiffChain& c);

/// y = 1/z: map every equation through the birational change of variables and
/// clear denominators.
DiffSystem invert_system(const DiffSystem& S);

struct PerChainReduction {
    RegularChain chain;
    MP g1_norm;
    MP h_chain;
    std::vector<MP> intermediates;
};

struct ReducedEquation {
    MP H;  // in u0,u1 (2 vars), primitive with fixed sign; constant iff trivial
    std::vector<PerChainReduction> per_chain;
    std::vector<RegularChain> discarded_dim0;
    std::vector<RegularChain> discarded_y_rooted;
    std::vector<AlgNum> constant_solutions;  // y == const roots
    bool all_constants_solve = false;
    bool trivial = false;  // every chain was discarded
};

/// Full reduction pipeline; throws Dimension when any component has
/// dimension >= 2. Does not throw on the trivial outcome (flag instead).
ReducedEquation reduce_system_info(const DiffSystem& S, const Limits& lim = {});

/// Same, but the trivial outcome raises ErrorKind::TrivialSystem.
ReducedEquation reduce_system(const DiffSystem& S, const Limits& lim = {});

/// f = y_factors * yprime_factors * stripped (up to a unit), with stripped
/// free of factors in Q[u0] alone or Q[u1] alone.
struct StripResult {
    MP stripped;
    MP y_factors;
    MP yprime_factors;
};
StripResult strip_univariate_factors(const MP& f);

} // namespace aodes
