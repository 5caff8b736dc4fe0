#pragma once

#include <random>
#include <string>
#include <vector>

#include "aodes/multipoly.hpp"

namespace aodes::testutil {

inline MP u(int i, int n = 2) { return MP::var(i, n, Rat(1)); }
inline MP cst(long v, int n = 2) { return MP::constant(Rat(v), n); }

/// Random integer-coefficient polynomial, for property suites.
inline MP random_poly(std::mt19937_64& rng, int nvars, int maxdeg, int nterms, long coeff_range = 9) {
    MP p(nvars);
    std::uniform_int_distribution<int> dexp(0, maxdeg);
    std::uniform_int_distribution<long> dc(-coeff_range, coeff_range);
    for (int t = 0; t < nterms; ++t) {
        Exp e(static_cast<size_t>(nvars), 0);
        for (int v = 0; v < nvars; ++v) e[static_cast<size_t>(v)] = static_cast<uint32_t>(dexp(rng));
        long c = dc(rng);
        if (c == 0) c = 1;
        p.add_term(std::move(e), Rat(c));
    }
    return p;
}

inline UPoly<Rat> random_upoly(std::mt19937_64& rng, int maxdeg, long coeff_range = 9) {
    std::uniform_int_distribution<int> dd(0, maxdeg);
    std::uniform_int_distribution<long> dc(-coeff_range, coeff_range);
    int d = dd(rng);
    UPoly<Rat> f;
    for (int i = 0; i <= d; ++i) f.c.push_back(Rat(dc(rng)));
    f.trim();
    return f;
}

/// Sylvester matrix determinant by cofactor expansion; independent oracle for
/// the Bareiss-based resultant.
inline MP sylvester_resultant_oracle(const MP& f, const MP& g, int var) {
    int df = f.deg(var), dg = g.deg(var);
    int n = std::max(f.nvars, g.nvars);
    if (df <= 0 && dg <= 0) return MP::constant(Rat(1), n);
    if (df <= 0) return f.resized(n).pow(dg);
    if (dg <= 0) return g.resized(n).pow(df);
    auto fc = f.resized(n).coeffs_in(var);
    auto gc = g.resized(n).coeffs_in(var);
    int dim = df + dg;
    std::vector<std::vector<MP>> m(static_cast<size_t>(dim),
                                   std::vector<MP>(static_cast<size_t>(dim), MP(n)));
    // g rows first, matching the library's sign convention
    for (int r = 0; r < df; ++r)
        for (int j = 0; j <= dg; ++j) m[size_t(r)][size_t(r + j)] = gc[size_t(dg - j)];
    for (int r = 0; r < dg; ++r)
        for (int j = 0; j <= df; ++j) m[size_t(df + r)][size_t(r + j)] = fc[size_t(df - j)];
    // cofactor expansion along the first column, recursively
    struct Det {
        static MP run(const std::vector<std::vector<MP>>& a, std::vector<int> rows,
                      std::vector<int> cols, int n) {
            if (rows.empty()) return MP::constant(Rat(1), n);
            MP acc(n);
            int sign = 1;
            for (size_t i = 0; i < rows.size(); ++i) {
                const MP& pivot = a[size_t(rows[i])][size_t(cols[0])];
                if (!pivot.is_zero_poly()) {
                    std::vector<int> r2;
                    for (size_t k = 0; k < rows.size(); ++k)
                        if (k != i) r2.push_back(rows[k]);
                    std::vector<int> c2(cols.begin() + 1, cols.end());
                    MP sub = run(a, r2, c2, n);
                    MP term = pivot * sub;
                    acc = (sign > 0) ? acc + term : acc - term;
                }
                sign = -sign;
            }
            return acc;
        }
    };
    std::vector<int> rows(static_cast<size_t>(dim)), cols(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) rows[size_t(i)] = cols[size_t(i)] = i;
    return Det::run(m, rows, cols, n);
}

} // namespace aodes::testutil
