#pragma once

#include <string>

#include "aodes/diffsys.hpp"
#include "aodes/series.hpp"

namespace aodes {

std::string rat_str(const Rat& q);

/// Univariate polynomial in the given variable name, descending powers.
std::string upoly_str(const UPoly<Rat>& f, const std::string& var);

/// Multivariate polynomial; names u0, u1, ... or y, y', y'', y^(k).
std::string mp_str(const MP& f, bool derivative_notation = true);

/// {minpoly: "...", interval: [a, b]} / conjugate-pair form.
std::string algnum_str(const AlgNum& a);

std::string coeff_str(const Coeff& c, const std::string& param_name);

/// One-line rendering of a truncation: "y(x) = ... + O(...)".
std::string truncation_str(const PuiseuxTruncation& t);

std::string family_str(const SolutionFamily& f);

} // namespace aodes
