#pragma once

#include <optional>
#include <vector>

#include "aodes/limits.hpp"
#include "aodes/multipoly.hpp"
#include "aodes/rootfind.hpp"

namespace aodes {

/// Polynomials with strictly increasing leading variables.
struct TriangularSystem {
    std::vector<MP> polys;
    int nvars = 0;

    bool triangular() const {
        int prev = -1;
        for (const auto& p : polys) {
            int lv = p.lead_var();
            if (lv <= prev || p.is_constant()) return false;
            prev = lv;
        }
        return true;
    }
};

struct RegularChain {
    TriangularSystem base;
    std::vector<MP> initials;  // init(F_j), cached
    MP pinit;                  // product of initials

    static RegularChain wrap(TriangularSystem t);
};

struct LeadingData {
    int lv;
    MP lc;
    MP init;
};

/// (lv, lc, init) of a non-constant polynomial; throws ConstantPolynomial.
LeadingData leading_data(const MP& f);

/// Iterated resultant of f against the chain, eliminating from the highest
/// leading variable down.
MP res_against_chain(const MP& f, const TriangularSystem& T);

bool is_regular_chain(const TriangularSystem& T);

/// Pseudo-remainder of f by the whole chain (highest lv first).
MP prem_chain(const MP& f, const TriangularSystem& T);

struct TriangularizeOptions {
    bool remove_redundant = true;
};

/// Regular-chain decomposition of V(system): the union of quasi-components
/// V(chain) \ V(pinit) over the output equals V(system). Empty output means
/// the system has no solutions.
std::vector<RegularChain> triangularize(const std::vector<MP>& system, int nvars,
                                        const TriangularizeOptions& opts = {},
                                        const Limits& lim = {});

/// dim V(chain) = ambient_vars - |chain|.
int chain_dimension(const RegularChain& chain, int ambient_vars);

// ---- zero-dimensional solving ----

/// A solution point of a zero-dimensional system: coordinates in a common
/// number field (null field = all rational).
struct AlgPoint {
    NumberFieldPtr field;
    std::vector<AlgNum> coords;
};

/// Enumerate the quasi-component of a chain whose leading variables cover all
/// of `free_vars_fixed`... chain must determine every variable it constrains;
/// variables not led by any chain polynomial are not allowed here.
std::vector<AlgPoint> enumerate_chain_points(const RegularChain& chain, const Limits& lim = {});

/// Brute-force solutions of a zero-dimensional system by resultant
/// elimination plus verification; independent of triangularize.
std::vector<AlgPoint> brute_force_points(const std::vector<MP>& system, int nvars,
                                         const Limits& lim = {});

/// Squarefree characteristic polynomial of a linear form lambda over a point
/// set; used to compare solution sets exactly.
UPoly<Rat> point_set_signature(const std::vector<AlgPoint>& pts, const std::vector<Rat>& lambda);

} // namespace aodes
