#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "affmod/freudenthal.hpp"
#include "affmod/modular.hpp"
#include "affmod/qdim.hpp"
#include "affmod/weights.hpp"
#include "affmod/young.hpp"

namespace affmod {

namespace detail {

/// Fold a shifted-coordinate point into the strictly dominant affine alcove
/// at shifted level kbar. Returns 0 on a wall; otherwise writes the sorted
/// point back and returns the accumulated reflection sign. Termination: the
/// affine swap strictly decreases sum of squares whenever the gap exceeds
/// kbar.
inline int affine_fold(std::vector<int>& z, int kbar) {
    const int n = static_cast<int>(z.size());
    int sign = 1;
    for (;;) {
        // finite walls: sort descending, tracking parity (insertion sort)
        for (int i = 1; i < n; ++i) {
            int v = z[i], j = i - 1;
            while (j >= 0 && z[j] < v) {
                z[j + 1] = z[j];
                --j;
                sign = -sign;
            }
            z[j + 1] = v;
        }
        for (int i = 1; i < n; ++i)
            if (z[i] == z[i - 1]) return 0;
        const int gap = z[0] - z[n - 1];
        if (gap == kbar) return 0;  // affine wall
        if (gap < kbar) return sign;
        const int a = z[0], b = z[n - 1];
        z[0] = b + kbar;
        z[n - 1] = a - kbar;
        sign = -sign;
    }
}

/// Affine Dynkin labels of the unshifted weight behind a strictly dominant
/// shifted point.
inline Weight unshift(const std::vector<int>& z, const AlgebraContext& ctx) {
    Weight w(ctx.rbar);
    for (int i = 1; i < ctx.rbar; ++i) w[i] = z[i - 1] - z[i] - 1;
    w[0] = ctx.kbar - (z[0] - z[ctx.rbar - 1]) - 1;
    return w;
}

}  // namespace detail

/// Full fusion row lambda x mu by the affine Racah-Speiser fold: every weight
/// of the horizontal module of mu, shifted by lambda + rho, is folded into
/// the dominant alcove with signs. Exact integer arithmetic throughout.
inline std::map<Weight, long long> fusion_kac_walton_row(const Weight& lambda, const Weight& mu,
                                                         const AlgebraContext& ctx,
                                                         MultiplicityCache* cache = nullptr) {
    MultiplicityCache local;
    MultiplicityCache& mc = cache ? *cache : local;
    const auto& dm = mc.get(mu);

    const auto base = ortho_coords(lambda);  // lambda + rho
    std::map<Weight, long long> row;
    std::vector<int> z(ctx.rbar);
    for (const auto& [coords, mult] : module_weights(dm)) {
        for (int i = 0; i < ctx.rbar; ++i) z[i] = base[i] + coords[i];
        const int sign = detail::affine_fold(z, ctx.kbar);
        if (sign == 0) continue;
        row[detail::unshift(z, ctx)] += sign * mult;
    }
    for (auto it = row.begin(); it != row.end();) {
        if (it->second == 0) {
            it = row.erase(it);
            continue;
        }
        if (it->second < 0)
            throw std::logic_error("negative folded multiplicity at " + format_weight(it->first));
        ++it;
    }
    return row;
}

inline long long fusion_kac_walton(const Weight& lambda, const Weight& mu, const Weight& nu,
                                   const AlgebraContext& ctx, MultiplicityCache* cache = nullptr) {
    auto row = fusion_kac_walton_row(lambda, mu, ctx, cache);
    auto it = row.find(nu);
    return it == row.end() ? 0 : it->second;
}

/// Verlinde's sum over the S matrix; rounds to the nearest integer and
/// refuses values that sit farther than tau_n from one (an S defect) or come
/// out negative.
inline long long fusion_verlinde(int li, int mi, int ni, const ModularData& md,
                                 double tau_n = Tolerances{}.tau_n) {
    cd acc = 0.0;
    const int n = md.size();
    for (int g = 0; g < n; ++g)
        acc += md.S(li, g) * md.S(mi, g) * std::conj(md.S(ni, g)) / md.S(0, g);
    const double re = acc.real();
    const long long rounded = std::llround(re);
    if (std::abs(re - rounded) > tau_n || std::abs(acc.imag()) > tau_n)
        throw std::runtime_error("Verlinde sum not integral: " + std::to_string(re));
    if (rounded < 0) throw std::runtime_error("negative Verlinde coefficient");
    return rounded;
}

inline long long fusion_verlinde(const Weight& lambda, const Weight& mu, const Weight& nu,
                                 const ModularData& md, double tau_n = Tolerances{}.tau_n) {
    return fusion_verlinde(md.index.index_of(lambda), md.index.index_of(mu), md.index.index_of(nu),
                           md, tau_n);
}

/// Closed-form fusion row of lambda^1 = (k-2)L0 + L1 + Lr: coefficient
/// n(mu)-1 on mu itself (count of nonzero Dynkin labels, less one) and 1 on
/// every valid mu + L_i - L_{i-1} - L_j + L_{j-1}, i != j mod rbar.
inline std::map<Weight, long long> fusion_lambda1_row(const Weight& mu, const AlgebraContext& ctx) {
    if (ctx.level < 2 || ctx.rbar < 2) throw std::invalid_argument("lambda^1 fusion needs k >= 2");
    std::map<Weight, long long> row;
    int nz = 0;
    for (int v : mu)
        if (v != 0) ++nz;
    if (nz - 1 > 0) row[mu] = nz - 1;
    const int n = ctx.rbar;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Weight nu = mu;
            ++nu[i];
            --nu[(i + n - 1) % n];
            --nu[j];
            ++nu[(j + n - 1) % n];
            bool ok = true;
            for (int v : nu)
                if (v < 0) ok = false;
            if (ok) row[nu] = std::max(row.count(nu) ? row[nu] : 0ll, 1ll);
        }
    return row;
}

/// The fusion-generator weight set for J_d: Gamma_d = {lambda^i, mu^j,
/// Lambda^{rbar/d}} when rbar <= k, and its rank-level image Gamma'_d when
/// rbar > k > 1 (with the k = 2 and dual-rank-1 families empty by their
/// index ranges).
inline std::vector<Weight> fusion_generators(const AlgebraContext& ctx, int d) {
    check_divisor(ctx, d);
    if (ctx.level < 2) throw std::invalid_argument("fusion generators need k >= 2");
    std::vector<Weight> gs;
    if (ctx.rbar <= ctx.level) {
        for (int i = 1; 2 * i <= ctx.rbar; ++i) gs.push_back(lambda_gen(ctx, i));
        if (ctx.level >= 3)
            for (int j = 1; 2 * j <= ctx.rank; ++j) gs.push_back(mu_gen(ctx, j));
        gs.push_back(fundamental_lift(ctx, ctx.rbar / d));
    } else {
        const auto dual = ctx.dual();
        for (int i = 1; 2 * i <= dual.rbar; ++i)
            gs.push_back(rank_level_transpose_prime(lambda_gen(dual, i), dual));
        if (dual.level >= 3)
            for (int j = 1; 2 * j <= dual.rank; ++j)
                gs.push_back(rank_level_transpose_prime(mu_gen(dual, j), dual));
        const int target = ctx.rbar / d;
        const int m = target / ctx.level;  // minimal non-negative with 0 <= target - m k < k
        const int ell = target - m * ctx.level;
        gs.push_back(apply_j(rank_level_transpose(fundamental_lift(dual, ell), dual), m));
    }
    return gs;
}

/// S-ratio separation closure: one refinement round of Definition-style
/// fusion-generator sets. Given distinguishing weights G inside P_d, a
/// weight lambda survives when every mu in P_d outside its J_d-orbit is
/// separated from it by some gamma in G through the eigenvalue ratios
/// S(gamma,.)/S(vac,.).
inline std::vector<int> separation_round(const std::vector<int>& pd, const std::vector<int>& gs,
                                         const ModularData& md, int d, double tol = 1e-8) {
    std::vector<int> out;
    const int rb = md.ctx.rbar;
    for (int li : pd) {
        bool all_separated = true;
        for (int mi : pd) {
            if (mi == li) continue;
            bool same_orbit = false;
            for (int a = 0; a < rb; a += d)
                if (md.jperm[a][li] == mi) same_orbit = true;
            if (same_orbit) continue;
            bool separated = false;
            for (int gi : gs) {
                const cd rl = md.S(gi, li) / md.S(0, li);
                const cd rm = md.S(gi, mi) / md.S(0, mi);
                if (std::abs(rl - rm) > tol * std::max(1.0, std::max(std::abs(rl), std::abs(rm)))) {
                    separated = true;
                    break;
                }
            }
            if (!separated) {
                all_separated = false;
                break;
            }
        }
        if (all_separated) out.push_back(li);
    }
    return out;
}

/// True when Gamma_d separates all of P_d within `rounds` refinement rounds.
inline bool fusion_generator_closure(const ModularData& md, int d, int rounds = 2) {
    check_divisor(md.ctx, d);
    std::vector<int> pd;
    const int m = md.ctx.rbar / d;
    for (int i = 0; i < md.size(); ++i)
        if (md.tmod[i] % m == 0) pd.push_back(i);
    std::vector<int> gs;
    for (const auto& g : fusion_generators(md.ctx, d)) gs.push_back(md.index.index_of(g));
    std::vector<int> cur = gs;
    for (int round = 0; round < rounds; ++round) {
        cur = separation_round(pd, cur, md, d);
        if (cur.size() == pd.size()) return true;
    }
    return false;
}

}  // namespace affmod
