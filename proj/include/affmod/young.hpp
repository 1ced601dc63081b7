#pragma once

#include <stdexcept>
#include <vector>

#include "affmod/norms.hpp"
#include "affmod/weight.hpp"

namespace affmod {

/// Row lengths of the Young diagram of w: row i (1-based, i = 1..r) has
/// sum_{j>=i} w_j boxes.
inline std::vector<int> young_rows(const Weight& w) {
    const int r = static_cast<int>(w.size()) - 1;
    std::vector<int> rows(r);
    int acc = 0;
    for (int i = r; i >= 1; --i) {
        acc += w[i];
        rows[i - 1] = acc;
    }
    return rows;
}

/// Rank-level transpose: build the Young diagram of w, transpose it, delete
/// the columns of length exactly k, and read off the resulting level-(r+1)
/// weight of A_{k-1}^(1). Undefined for k = 1 (the dual algebra would be A_0).
inline Weight rank_level_transpose(const Weight& w, const AlgebraContext& ctx) {
    if (ctx.level < 2) throw std::invalid_argument("rank-level transpose requires level >= 2");
    const int k = ctx.level;
    const auto rows = young_rows(w);
    // transposed row b (1-based) counts the original rows of length >= b,
    // among those shorter than k (length-k columns of the transpose deleted)
    std::vector<int> trows(k - 1, 0);
    for (int len : rows) {
        if (len >= k) continue;
        for (int b = 1; b <= len; ++b) ++trows[b - 1];
    }
    Weight dual(k, 0);
    int total = 0;
    for (int i = 1; i <= k - 1; ++i) {
        int next = (i < k - 1) ? trows[i] : 0;
        dual[i] = trows[i - 1] - next;
        total += dual[i];
    }
    dual[0] = ctx.rbar - total;
    return dual;
}

/// T'(w) = Jdual^{-t(w)/rbar} T(w), defined on the parity set P_1
/// (t(w) divisible by rbar); lands in the dual parity set.
inline Weight rank_level_transpose_prime(const Weight& w, const AlgebraContext& ctx) {
    const long long t = tality(w);
    if (t % ctx.rbar != 0)
        throw std::invalid_argument("T' needs t(w) = 0 mod rbar, got w = " + format_weight(w));
    Weight img = rank_level_transpose(w, ctx);
    return apply_j(img, static_cast<int>(-(t / ctx.rbar)));
}

}  // namespace affmod
