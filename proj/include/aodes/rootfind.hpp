#pragma once

#include <utility>
#include <vector>

#include "aodes/limits.hpp"
#include "aodes/multipoly.hpp"

namespace aodes {

// ---- Real root isolation (Sturm) ----

/// Isolating intervals (lo, hi) with f(lo), f(hi) != 0, one real root each,
/// ascending. f need not be squarefree.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const UPoly<Rat>& f);

/// Shrink an isolating interval below `width` by bisection.
std::pair<Rat, Rat> refine_interval(const UPoly<Rat>& f, std::pair<Rat, Rat> iv, const Rat& width);

int count_real_roots(const UPoly<Rat>& f);

// ---- Number fields and algebraic roots ----

NumberFieldPtr make_number_field(const UPoly<Rat>& monic_irreducible, RootSelector sel,
                                 std::string gen_name = "alpha");

struct AlgRoot {
    AlgNum value;
    int multiplicity = 1;
};

/// All roots of f over Q-bar, each as an algebraic number over the extension
/// generated by its irreducible factor. Real roots first (ascending), then
/// conjugate pairs; deterministic.
std::vector<AlgRoot> univariate_roots(const UPoly<Rat>& f, const Limits& lim = {});

/// Trager: irreducible factorization of a squarefree polynomial over Q(alpha).
std::vector<UPoly<AlgNum>> factor_over_field(const UPoly<AlgNum>& f, const NumberFieldPtr& field,
                                             const Limits& lim = {});

/// A root of a polynomial over a number field, together with the field that
/// contains it and the embedding of the old generator into that field.
struct ExtRoot {
    NumberFieldPtr field;    // null means plain rationals
    UPoly<Rat> gen_image;    // image of the previous generator (empty if field unchanged)
    bool field_changed = false;
    AlgNum value;
    int multiplicity = 1;
};

/// Roots of f (coefficients over `current`, null for Q) in extensions of the
/// current field; every returned root lives in a field containing `current`.
std::vector<ExtRoot> univariate_roots_ext(const UPoly<AlgNum>& f, const NumberFieldPtr& current,
                                          const Limits& lim = {});

/// Interval evaluation helpers (exact rational endpoints).
std::pair<Rat, Rat> interval_eval(const UPoly<Rat>& f, const std::pair<Rat, Rat>& x);

} // namespace aodes
