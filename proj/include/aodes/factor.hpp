#pragma once

#include <utility>
#include <vector>

#include "aodes/multipoly.hpp"

namespace aodes {

struct FactorLimits {
    int max_total_degree = 64;
    int max_subset_count = 1 << 12;
};

/// Irreducible factorization over Q: input == unit * prod(factors[i]^mult[i]).
/// Factors are integer-primitive with positive leading coefficient and
/// pairwise distinct.
struct UFactorization {
    Rat unit;
    std::vector<std::pair<UPoly<Rat>, int>> factors;
};

struct Factorization {
    Rat unit;
    std::vector<std::pair<MP, int>> factors;
};

/// Squarefree decomposition over Q (Yun): f == unit * prod(parts[i]^(i+1)-ish)
/// where each entry carries its multiplicity explicitly.
std::vector<std::pair<UPoly<Rat>, int>> squarefree_decompose(const UPoly<Rat>& f);

UFactorization factor_univariate(const UPoly<Rat>& f, const FactorLimits& lim = {});

/// Irreducible factorization of a polynomial in u0, u1 over Q.
Factorization factor_bivariate(const MP& f, const FactorLimits& lim = {});

bool is_irreducible_bivariate(const MP& f, const FactorLimits& lim = {});

} // namespace aodes
