#pragma once

#include <numeric>
#include <vector>

#include "affmod/weight.hpp"

namespace affmod {

/// Orthogonal coordinates of w + rho for A_r, one vector per weight:
/// x_j = sum_{i>=j}(w_i + 1) for j = 1..r and x_{rbar} = 0. The tuple is
/// strictly decreasing with x_1 <= kbar - 1, and pairwise differences realize
/// the pairing of w + rho against the positive roots e_i - e_j.
inline std::vector<int> ortho_coords(const Weight& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> x(n);
    x[n - 1] = 0;
    for (int j = n - 2; j >= 0; --j) x[j] = x[j + 1] + w[j + 1] + 1;
    return x;
}

/// rbar * (w+rho | w+rho) as an exact integer:
/// rbar * sum x_i^2 - (sum x_i)^2 in the normalization where long roots have
/// norm 2.
inline long long norm2_scaled(const Weight& w) {
    const long long rbar = static_cast<long long>(w.size());
    long long s = 0, s2 = 0;
    const auto x = ortho_coords(w);
    for (int v : x) {
        s += v;
        s2 += static_cast<long long>(v) * v;
    }
    return rbar * s2 - s * s;
}

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// (w+rho | w+rho), exactly.
inline Rational shifted_norm(const Weight& w) {
    long long n = norm2_scaled(w), d = static_cast<long long>(w.size());
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
}

/// (rho | rho) = rbar (rbar^2 - 1) / 12 for A_r.
inline Rational rho_norm(const AlgebraContext& ctx) {
    long long n = static_cast<long long>(ctx.rbar) * (static_cast<long long>(ctx.rbar) * ctx.rbar - 1);
    long long g = std::gcd(n, 12ll);
    return {n / g, 12 / g};
}

/// T-eigenvalue class of a weight: T_lambda = T_mu exactly when
/// (lambda+rho|lambda+rho) = (mu+rho|mu+rho) mod 2 kbar, i.e. the scaled
/// integer norms agree mod 2 rbar kbar. Pure integer arithmetic.
inline long long t_class(const Weight& w, const AlgebraContext& ctx) {
    const long long m = 2ll * ctx.rbar * ctx.kbar;
    return ((norm2_scaled(w) % m) + m) % m;
}

/// sum of orthogonal coordinates = t(w) + rbar(rbar-1)/2; enters the
/// rank-level phase of the S-matrix determinant form.
inline long long coord_sum(const Weight& w) {
    return tality(w) + static_cast<long long>(w.size()) * (static_cast<long long>(w.size()) - 1) / 2;
}

}  // namespace affmod
