#pragma once

#include <cstdlib>
#include <string>

#include "aodes/error.hpp"
#include "aodes/factor.hpp"

namespace aodes {

struct Limits {
    int max_order = 16;        // highest derivative order accepted (AODE_MAX_ORDER)
    int max_field_degree = 24; // extension degree cap (tower is kept flat)
    int newton_depth = 32;     // multiple-root recursion cap in the local solver
    int guard_terms = 5;       // extra reconstruction orders in alg_sol
    FactorLimits factor;

    static Limits from_env() {
        Limits l;
        if (const char* s = std::getenv("AODE_MAX_ORDER")) {
            char* end = nullptr;
            long v = std::strtol(s, &end, 10);
            if (end && *end == '\0' && v >= 1 && v <= 64) l.max_order = static_cast<int>(v);
        }
        return l;
    }
};

} // namespace aodes
