#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "affmod/norms.hpp"
#include "affmod/weights.hpp"
#include "affmod/young.hpp"

namespace affmod {

inline double sin_pi_over(long long num, long long den) {
    return std::sin(std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

/// q-dimension of w: the positive-root sine product
///   prod_{i<j} sin(pi (x_i - x_j)/kbar) / sin(pi (j-i)/kbar),
/// equal to S_{w,vac}/S_{vac,vac}. Needs no S matrix.
inline double qdim(const Weight& w, const AlgebraContext& ctx) {
    const auto x = ortho_coords(w);
    const int n = ctx.rbar;
    double q = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            q *= sin_pi_over(x[i] - x[j], ctx.kbar) / sin_pi_over(j - i, ctx.kbar);
    return q;
}

/// Weyl dimension of the horizontal module with highest weight w-bar:
/// prod (x_i - x_j)/(j - i), an exact integer.
inline long long weyl_dimension(const Weight& w) {
    const auto x = ortho_coords(w);
    const int n = static_cast<int>(x.size());
    // accumulate in double, dims of interest stay well below 2^53
    double num = 1.0, den = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            num *= x[i] - x[j];
            den *= j - i;
        }
    return std::llround(num / den);
}

// --- distinguished weights: the fusion-generator families ---

/// lambda^i = (k-2)L0 + L_i + L_{rbar-i}, 1 <= i <= rbar/2 (needs k >= 2).
inline Weight lambda_gen(const AlgebraContext& ctx, int i) {
    if (ctx.level < 2 || i < 1 || 2 * i > ctx.rbar) throw std::invalid_argument("lambda^i out of range");
    return lift(ctx, {{i, 1}, {ctx.rbar - i, 1}});
}

/// mu^j = (k-3)L0 + L_1 + L_j + L_{r-j}, 1 <= j <= r/2 (needs k >= 3).
inline Weight mu_gen(const AlgebraContext& ctx, int j) {
    if (ctx.level < 3 || j < 1 || 2 * j > ctx.rank) throw std::invalid_argument("mu^j out of range");
    return lift(ctx, {{1, 1}, {j, 1}, {ctx.rank - j, 1}});
}

/// Lambda^l = (k-1)L0 + L_l, with index wraparound Lambda^rbar = vacuum.
inline Weight fundamental_lift(const AlgebraContext& ctx, int l) {
    l = ((l % ctx.rbar) + ctx.rbar) % ctx.rbar;
    if (l == 0) return vacuum_weight(ctx);
    return lift(ctx, {{l, 1}});
}

// --- closed-form q-dimensions of the generator families ---

inline double qdim_lambda_gen(const AlgebraContext& ctx, int l) {
    const int rb = ctx.rbar, kb = ctx.kbar;
    double q = sin_pi_over(rb - 2 * l + 1, kb) / sin_pi_over(rb + 1, kb);
    for (int j = 1; j <= l; ++j) {
        double f = sin_pi_over(rb + 2 - j, kb) / sin_pi_over(j, kb);
        q *= f * f;
    }
    return q;
}

inline double qdim_mu_gen(const AlgebraContext& ctx, int l) {
    const int rb = ctx.rbar, kb = ctx.kbar;
    double q = sin_pi_over(rb - l, kb) * sin_pi_over(rb + 2, kb) * sin_pi_over(rb - 2 * l, kb) *
               sin_pi_over(l, kb) /
               (sin_pi_over(1, kb) * sin_pi_over(l + 1, kb) * sin_pi_over(l + 1, kb) *
                sin_pi_over(rb + 1, kb));
    for (int j = 1; j <= l; ++j) {
        double f = sin_pi_over(rb + 2 - j, kb) / sin_pi_over(j, kb);
        q *= f * f;
    }
    return q;
}

inline double qdim_fundamental(const AlgebraContext& ctx, int l) {
    double q = 1.0;
    for (int j = 1; j <= l; ++j) q *= sin_pi_over(ctx.rbar + 1 - j, ctx.kbar) / sin_pi_over(j, ctx.kbar);
    return q;
}

// --- fixed points ---

/// The uniform fixed point of period p: phi^p = sum_j (k p / rbar) L_{p j}.
/// Exists when p | rbar, p < rbar and (rbar/p) | k.
inline Weight uniform_fixed_point(const AlgebraContext& ctx, int p) {
    check_divisor(ctx, p);
    if (p >= ctx.rbar) throw std::invalid_argument("period must be < rbar");
    if (ctx.level % (ctx.rbar / p) != 0)
        throw std::invalid_argument("no uniform fixed point: rbar/p does not divide k");
    Weight w(ctx.rbar, 0);
    const int a = ctx.level * p / ctx.rbar;
    for (int j = 0; j < ctx.rbar / p; ++j) w[p * j] = a;
    return w;
}

/// q-dimension of phi^p through the closed product form
///   S_{vac,phi^p} = |s| 2^{rbar(p-1)/2} (rbar/p)^{rbar/2}
///                   prod_{j=1..p-1} sin(pi j rbar/(p kbar))^{rbar - j rbar/p}
/// divided by the vacuum sine product. Cross-checks qdim() on the explicit
/// weight.
inline double fixed_point_qdim(const AlgebraContext& ctx, int p) {
    check_divisor(ctx, p);
    if (p >= ctx.rbar || ctx.level % (ctx.rbar / p) != 0)
        throw std::invalid_argument("fixed_point_qdim: invalid period");
    const int rb = ctx.rbar, kb = ctx.kbar;
    // log-space: the two products individually overflow the double range for
    // larger rbar while their ratio is tame
    double log_num = 0.5 * rb * (p - 1) * std::numbers::ln2 + 0.5 * rb * std::log(double(rb) / p);
    for (int j = 1; j < p; ++j)
        log_num += (rb - static_cast<double>(j) * rb / p) *
                   std::log(sin_pi_over(static_cast<long long>(j) * rb, static_cast<long long>(p) * kb));
    double log_den = 0.0;  // vacuum row entry over |s|: prod_{i<j} 2 sin(pi (j-i)/kbar)
    for (int m = 1; m < rb; ++m) log_den += (rb - m) * (std::numbers::ln2 + std::log(sin_pi_over(m, kb)));
    return std::exp(log_num - log_den);
}

}  // namespace affmod
