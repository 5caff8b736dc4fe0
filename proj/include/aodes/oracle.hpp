#pragma once

#include "aodes/diffsys.hpp"
#include "aodes/series.hpp"

namespace aodes {

struct VerifyReport {
    bool ok = false;
    // one entry per equation; nullopt = residual identically zero
    std::vector<std::optional<Rat>> residual_valuations;
    Rat threshold;  // the certified bound the residuals were held against
};

/// Substitute the truncation (with zero tail) and its formal derivatives into
/// every equation of S and compare residual valuations against
/// min(order, T + 1/n - m), where T is the truncation order, n the
/// ramification and m the system order. Exact truncations must produce
/// identically zero residuals to pass at any order.
VerifyReport verify_truncation(const DiffSystem& S, const PuiseuxTruncation& t, const Rat& order);

} // namespace aodes
