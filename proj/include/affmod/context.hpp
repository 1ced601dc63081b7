#pragma once

#include <stdexcept>
#include <string>

namespace affmod {

/// Fixed data of the algebra A_r^(1) at level k. Everything downstream is a
/// function of these constants.
struct AlgebraContext {
    int rank = 0;    // r >= 1
    int level = 0;   // k >= 1
    int rbar = 0;    // r + 1, order of the basic diagram rotation
    int kbar = 0;    // k + rbar, the shifted level
    int kprime = 0;  // kbar when both k and rbar are odd, else k

    static AlgebraContext make(int r, int k) {
        if (r < 1) throw std::invalid_argument("rank must be >= 1, got " + std::to_string(r));
        if (k < 1) throw std::invalid_argument("level must be >= 1, got " + std::to_string(k));
        AlgebraContext c;
        c.rank = r;
        c.level = k;
        c.rbar = r + 1;
        c.kbar = k + c.rbar;
        c.kprime = (k % 2 == 1 && c.rbar % 2 == 1) ? c.kbar : k;
        return c;
    }

    // dual Coxeter number of A_r
    int hdual() const { return rbar; }

    // rank-level dual context: A_{k-1} at level r+1
    AlgebraContext dual() const {
        if (level < 2) throw std::invalid_argument("rank-level dual undefined for level 1");
        return make(level - 1, rbar);
    }

    bool operator==(const AlgebraContext& o) const { return rank == o.rank && level == o.level; }
};

/// Numeric tolerances shared across the library.
struct Tolerances {
    double tau_s = 1e-9;   // matrix identities on S and T
    double tau_m = 1e-8;   // S-commutation of invariants (commutator accumulates |P+| terms)
    double tau_n = 1e-6;   // Verlinde integer rounding
};

struct Capacities {
    long long weight_cap = 20000;     // refuse to materialize P+ above this
    int commutant_cap = 24;           // refuse to enumerate above this commutant dimension
    long long node_cap = 100000000;   // DFS node budget; exceeded -> error, never truncation
};

}  // namespace affmod
