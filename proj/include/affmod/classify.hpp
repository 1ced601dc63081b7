#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affmod/catalog.hpp"
#include "affmod/commutant.hpp"
#include "affmod/parallel.hpp"
#include "affmod/qdim.hpp"
#include "affmod/verify.hpp"

namespace affmod {

// --- q-dimension screen (the inequality grid) ---

/// Largest generator q-dimension for the J_d fusion-generator choice
/// (direct family when rbar <= k, rank-level transposed family when
/// rbar > k > 1; q-dimensions are rotation- and duality-invariant so the
/// dual closed forms apply verbatim).
inline double max_generator_qdim(const AlgebraContext& ctx, int d) {
    check_divisor(ctx, d);
    double mx = 0.0;
    if (ctx.rbar <= ctx.level) {
        for (int i = 1; 2 * i <= ctx.rbar; ++i) mx = std::max(mx, qdim_lambda_gen(ctx, i));
        if (ctx.level >= 3)
            for (int j = 1; 2 * j <= ctx.rank; ++j) mx = std::max(mx, qdim_mu_gen(ctx, j));
        mx = std::max(mx, qdim_fundamental(ctx, ctx.rbar / d));
    } else {
        const auto dual = ctx.dual();
        for (int i = 1; 2 * i <= dual.rbar; ++i) mx = std::max(mx, qdim_lambda_gen(dual, i));
        if (dual.level >= 3)
            for (int j = 1; 2 * j <= dual.rank; ++j) mx = std::max(mx, qdim_mu_gen(dual, j));
        mx = std::max(mx, qdim_fundamental(dual, (ctx.rbar / d) % ctx.level));
    }
    return mx;
}

/// Whether every fixed point of J_d dominates the generator q-dimensions:
///   max_g D(g) < (p / rbar) D(phi^p)  for every admissible period p.
/// Vacuously true when J_d has no fixed points. Comparisons carry a small
/// relative margin so exact-equality contexts land on the failing side.
inline bool qdim_screen(const AlgebraContext& ctx, int d, double margin = 1e-9) {
    check_divisor(ctx, d);
    if (ctx.level == 1) return true;  // no fixed points at level 1
    double mx = -1.0;
    for (int p = d; p < ctx.rbar; p += d) {
        if (ctx.rbar % p) continue;
        if (ctx.level % (ctx.rbar / p)) continue;
        if (mx < 0) mx = max_generator_qdim(ctx, d);
        const double rhs = (static_cast<double>(p) / ctx.rbar) * fixed_point_qdim(ctx, p);
        if (!(mx < rhs * (1.0 - margin))) return false;
    }
    return true;
}

/// The (r,k) pairs in a rectangle where some divisor fails the screen.
inline std::set<std::pair<int, int>> qdim_screen_exceptions(int rmax, int kmax) {
    std::set<std::pair<int, int>> out;
    for (int r = 1; r <= rmax; ++r)
        for (int k = 1; k <= kmax; ++k) {
            const auto ctx = AlgebraContext::make(r, k);
            for (int d = 1; d <= ctx.rbar; ++d) {
                if (ctx.rbar % d) continue;
                if (!qdim_screen(ctx, d)) {
                    out.insert({r, k});
                    break;
                }
            }
        }
    return out;
}

// --- q-dimension degeneracy scan ---

/// Weights outside the dihedral orbit of lambda^1 whose q-dimension
/// coincides with D(lambda^1), reported as canonical orbit representatives.
/// Streams over P+ without materializing it; safe far beyond the weight cap.
struct DegeneracyScan {
    double reference = 0.0;
    std::vector<Weight> orbit_reps;
};

namespace detail {

/// lexicographically greatest among all rotations of w and of its reversal
inline bool is_dihedral_rep(const Weight& w, int rbar) {
    for (int a = 1; a < rbar; ++a) {
        // compare w against J^a w without materializing: (J^a w)_i = w_{i-a}
        for (int i = 0; i < rbar; ++i) {
            const int v = w[(i - a + rbar) % rbar];
            if (v != w[i]) {
                if (v > w[i]) return false;
                break;
            }
        }
    }
    for (int a = 0; a < rbar; ++a) {
        // reversal branch: (J^a C w)_i = w[(a - i) mod rbar]
        for (int i = 0; i < rbar; ++i) {
            const int v = w[(a - i % rbar + 2 * rbar) % rbar];
            if (v != w[i]) {
                if (v > w[i]) return false;
                break;
            }
        }
    }
    return true;
}

}  // namespace detail

inline DegeneracyScan qdim_degeneracy_scan(const AlgebraContext& ctx, double rel_tol = 1e-7,
                                           int workers = 0) {
    if (ctx.level < 2) throw std::invalid_argument("degeneracy scan needs level >= 2");
    DegeneracyScan out;
    out.reference = qdim_lambda_gen(ctx, 1);
    const Weight l1rep = dihedral_rep(lambda_gen(ctx, 1), ctx);
    const int rb = ctx.rbar, k = ctx.level;

    std::vector<double> st(ctx.kbar);
    for (int g = 1; g < ctx.kbar; ++g) st[g] = sin_pi_over(g, ctx.kbar);
    double denom = 1.0;
    for (int i = 0; i < rb; ++i)
        for (int j = i + 1; j < rb; ++j) denom *= st[j - i];
    const double inv_denom = 1.0 / denom;

    // jobs: (lambda_0, lambda_1) prefixes with lambda_0 maximal (a canonical
    // representative always leads with its largest label)
    struct Job {
        int l0, l1;
    };
    std::vector<Job> jobs;
    for (int l0 = (k + rb - 1) / rb; l0 <= k; ++l0)
        for (int l1 = 0; l1 <= std::min(l0, k - l0); ++l1)
            if (rb > 2 || l1 == k - l0) jobs.push_back({l0, l1});
    std::vector<std::vector<Weight>> hits(jobs.size());

    parallel_for(
        static_cast<long long>(jobs.size()),
        [&](long long ji) {
            const auto [l0, l1] = jobs[ji];
            Weight w(rb, 0);
            w[0] = l0;
            if (rb > 1) w[1] = l1;
            std::vector<int> x(rb);
            x[rb - 1] = 0;
            auto emit = [&]() {
                if (!detail::is_dihedral_rep(w, rb)) return;
                for (int j = rb - 2; j >= 0; --j) x[j] = x[j + 1] + w[j + 1] + 1;
                double num = 1.0;
                for (int i = 0; i < rb; ++i)
                    for (int j = i + 1; j < rb; ++j) num *= st[x[i] - x[j]];
                const double q = num * inv_denom;
                if (std::abs(q - out.reference) <= rel_tol * out.reference && w != l1rep)
                    hits[ji].push_back(w);
            };
            // fill positions 2..r with labels <= l0 summing to the remainder
            std::function<void(int, int)> rec = [&](int pos, int remaining) {
                if (pos == rb - 1) {
                    if (remaining <= l0) {
                        w[pos] = remaining;
                        emit();
                        w[pos] = 0;
                    }
                    return;
                }
                const int hi = std::min(l0, remaining);
                if (static_cast<long long>(l0) * (rb - pos) < remaining) return;
                for (int v = hi; v >= 0; --v) {
                    w[pos] = v;
                    rec(pos + 1, remaining - v);
                }
                w[pos] = 0;
            };
            if (rb == 1) return;
            if (rb == 2)
                emit();
            else
                rec(2, k - l0 - l1);
        },
        workers, 1);
    for (auto& h : hits)
        for (auto& w : h) out.orbit_reps.push_back(std::move(w));
    std::sort(out.orbit_reps.begin(), out.orbit_reps.end(), std::greater<>());
    return out;
}

// --- exhaustive ADE7 search ---

struct Ade7Search {
    std::vector<InvariantMatrix> found;
    long long nodes = 0;
    std::vector<std::pair<int, int>> dof_per_divisor;  // (d, free integer dims)
};

namespace detail {

struct GateProblem {
    Eigen::VectorXd beta;   // entry offsets over the support
    Eigen::MatrixXd W;      // entry = beta + W v over pivot values v
    std::vector<int> pivot; // support coordinates chosen as free entries
    std::vector<long long> vmax;  // inclusive upper bound per pivot
};

/// Restrict the commutant span to the exact vacuum-row/column pattern of
/// J_d; returns the affine parametrization by pivot entries, or nothing if
/// the gate is infeasible.
inline std::optional<GateProblem> gate_restrict(const ModularData& md, const CommutantBasis& cb,
                                                int d, const std::vector<long long>& ubound) {
    const int rb = md.ctx.rbar;
    std::set<int> gate;
    for (int j = 0; j < rb / d; ++j) gate.insert(md.jperm[(d * j) % rb][0]);
    for (int g : gate)
        if (cb.coord_of(0, g) < 0 || cb.coord_of(g, 0) < 0) return std::nullopt;

    std::vector<int> rows;
    std::vector<double> targets;
    for (int u = 0; u < static_cast<int>(cb.support.size()); ++u) {
        const auto [i, j] = cb.support[u];
        if (i != 0 && j != 0) continue;
        rows.push_back(u);
        const bool on = (i == 0 && gate.count(j)) || (j == 0 && gate.count(i));
        targets.push_back(on ? 1.0 : 0.0);
    }
    Eigen::MatrixXd A(rows.size(), cb.dim);
    Eigen::VectorXd t(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        A.row(r) = cb.basis.row(rows[r]);
        t[r] = targets[r];
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    Eigen::VectorXd c0 = svd.solve(t);
    if ((A * c0 - t).cwiseAbs().maxCoeff() > 1e-7) return std::nullopt;

    const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > 1e-9 * std::max(smax, 1.0)) ++rank;
    Eigen::MatrixXd N = svd.matrixV().rightCols(cb.dim - rank);

    GateProblem gp;
    Eigen::VectorXd alpha = cb.basis * c0;
    Eigen::MatrixXd Gamma = cb.basis * N;
    const int kd = static_cast<int>(Gamma.cols());
    if (kd == 0) {
        gp.beta = alpha;
        gp.W.resize(alpha.size(), 0);
        return gp;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Gamma.transpose());
    gp.pivot.resize(kd);
    for (int i = 0; i < kd; ++i) gp.pivot[i] = qr.colsPermutation().indices()[i];
    // tightest integer ranges first keeps the search tree narrow at the top
    std::sort(gp.pivot.begin(), gp.pivot.end(),
              [&](int a, int b) { return ubound[a] < ubound[b]; });
    Eigen::MatrixXd GE(kd, kd);
    for (int i = 0; i < kd; ++i) GE.row(i) = Gamma.row(gp.pivot[i]);
    gp.W = Gamma * GE.inverse();
    Eigen::VectorXd aE(kd);
    for (int i = 0; i < kd; ++i) aE[i] = alpha[gp.pivot[i]];
    gp.beta = alpha - gp.W * aE;
    gp.vmax.resize(kd);
    for (int i = 0; i < kd; ++i) gp.vmax[i] = std::max(0ll, ubound[gp.pivot[i]]);
    return gp;
}

}  // namespace detail

/// All ADE7-type invariants of the context, by exhaustive search: for each
/// divisor the vacuum row and column are pinned to the J_d pattern inside
/// the commutant span, the surviving free entries are integer-ranged by the
/// Perron-Frobenius bounds, and every integer point is re-verified from
/// scratch. Duplicates across divisors are merged.
inline Ade7Search enumerate_ade7(const ModularData& md, const CommutantBasis& cb,
                                 std::shared_ptr<const WeightIndex> idx,
                                 const Capacities& caps = Capacities{},
                                 const Tolerances& tol = Tolerances{}) {
    if (cb.dim > caps.commutant_cap)
        throw std::length_error("commutant dimension " + std::to_string(cb.dim) +
                                " above the configured cap " + std::to_string(caps.commutant_cap));
    Ade7Search out;
    const int n = md.size();
    const int rb = md.ctx.rbar;
    const int K = static_cast<int>(cb.support.size());
    const double s00 = md.S(0, 0).real();
    const double global_bound = 1.0 / (s00 * s00);

    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) q[i] = md.qdim_via_s(i);

    std::set<InvariantMatrix::EntryMap> seen;
    for (int d = 1; d <= rb; ++d) {
        if (rb % d) continue;
        // per-entry upper bounds for this divisor's gate
        std::vector<int> osz(n, 0);
        for (int i = 0; i < n; ++i) {
            std::set<int> o;
            for (int a = 0; a < rb; a += d) o.insert(md.jperm[a][i]);
            osz[i] = static_cast<int>(o.size());
        }
        const int m = rb / d;
        std::vector<long long> ub(K, 0);
        for (int u = 0; u < K; ++u) {
            const auto [i, j] = cb.support[u];
            if (md.tmod[i] % m != 0 || md.tmod[j] % m != 0) continue;  // outside P_d
            double b = global_bound;
            b = std::min(b, static_cast<double>(m) * q[j] / (osz[i] * q[i]));
            b = std::min(b, static_cast<double>(m) * q[i] / (osz[j] * q[j]));
            ub[u] = static_cast<long long>(std::floor(b + 1e-6));
        }

        auto gp = detail::gate_restrict(md, cb, d, ub);
        if (!gp) continue;
        const int kd = static_cast<int>(gp->W.cols());
        out.dof_per_divisor.emplace_back(d, kd);

        // suffix interval aggregates for pruning
        Eigen::VectorXd cur = gp->beta;
        std::vector<Eigen::VectorXd> suf_lo(kd + 1, Eigen::VectorXd::Zero(K));
        std::vector<Eigen::VectorXd> suf_hi(kd + 1, Eigen::VectorXd::Zero(K));
        for (int t = kd - 1; t >= 0; --t) {
            suf_lo[t] = suf_lo[t + 1];
            suf_hi[t] = suf_hi[t + 1];
            for (int u = 0; u < K; ++u) {
                const double span = gp->W(u, t) * static_cast<double>(gp->vmax[t]);
                suf_lo[t][u] += std::min(0.0, span);
                suf_hi[t][u] += std::max(0.0, span);
            }
        }
        const double eps = 1e-6;
        auto feasible = [&](int t) {
            for (int u = 0; u < K; ++u) {
                const double lo = cur[u] + suf_lo[t][u];
                const double hi = cur[u] + suf_hi[t][u];
                if (lo > static_cast<double>(ub[u]) + eps || hi < -eps) return false;
            }
            return true;
        };
        std::vector<long long> v(kd, 0);
        std::function<void(int)> dfs = [&](int t) {
            if (++out.nodes > caps.node_cap)
                throw std::runtime_error("ADE7 search exceeded the node cap");
            if (!feasible(t)) return;
            if (t == kd) {
                InvariantMatrix m2(idx);
                for (int u = 0; u < K; ++u) {
                    const double val = cur[u];
                    const long long r2 = std::llround(val);
                    if (std::abs(val - r2) > eps) return;  // not an integer point
                    if (r2 < 0 || r2 > ub[u]) return;
                    if (r2 != 0) m2.set(cb.support[u].first, cb.support[u].second, r2);
                }
                auto rep = verify(m2, md, tol);
                if (rep.ade7_type() && seen.insert(m2.entries()).second)
                    out.found.push_back(std::move(m2));
                return;
            }
            for (long long val = 0; val <= gp->vmax[t]; ++val) {
                if (val > 0) cur += gp->W.col(t);
                dfs(t + 1);
            }
            cur -= static_cast<double>(gp->vmax[t]) * gp->W.col(t);
        };
        dfs(0);
    }
    return out;
}

// --- expected list and the classification verdict ---

struct NamedInvariant {
    std::string name;
    InvariantMatrix matrix;
};

/// The published complete list for this context, with its redundancy rules:
/// conjugated copies dropped when C coincides with a simple-current
/// invariant, the four accidental coincidences skipped, and everything
/// deduplicated as matrices.
inline std::vector<NamedInvariant> theorem_expected_list(std::shared_ptr<const WeightIndex> idx) {
    const auto& ctx = idx->ctx();
    const int r = ctx.rank, k = ctx.level;
    std::vector<NamedInvariant> out;
    auto push = [&](InvariantMatrix m, const std::string& name) {
        m.finalize();
        for (const auto& e : out)
            if (e.matrix == m) return;
        out.push_back({name, std::move(m)});
    };
    const auto C = build_conjugation(idx);
    static const std::set<std::tuple<int, int, int>> c_coincidences = {
        {2, 3, 1}, {2, 6, 1}, {4, 5, 1}, {5, 3, 2}};
    for (int d = 1; d <= ctx.rbar; ++d) {
        if (ctx.rbar % d) continue;
        if ((ctx.kprime * d) % 2 != 0) continue;
        auto m = build_simple_current(idx, d);
        const std::string base = d == ctx.rbar ? "I" : "I[J" + std::to_string(d) + "]";
        push(m, base);
        const bool c_redundant = r == 1 || k <= 2 || c_coincidences.count({r, k, d});
        if (!c_redundant) push(compose(C, m), d == ctx.rbar ? "C" : "C.I[J" + std::to_string(d) + "]");
    }
    if (exceptional_context(ctx)) {
        const std::string tag = "E(" + std::to_string(r) + "," + std::to_string(k) + ")";
        auto e = build_exceptional(idx);
        push(e, tag);
        if ((r == 2 && k == 9) || (r == 8 && k == 3) || (r == 15 && k == 2))
            push(compose(C, e), "C." + tag);
        if (r == 15 && k == 2) push(build_projected_15_2(idx), "(1/2)I[J4]." + tag);
    }
    return out;
}

struct ClassificationReport {
    AlgebraContext ctx;
    std::vector<NamedInvariant> found;      // search output, named against the expected list
    std::vector<NamedInvariant> expected;
    std::vector<std::string> missing;       // expected but not found
    std::vector<std::string> unexpected;    // found but not expected
    long long nodes = 0;
    int commutant_dim = 0;
    bool match = false;
};

inline ClassificationReport classification_report(const ModularData& md,
                                                  const Capacities& caps = Capacities{},
                                                  const Tolerances& tol = Tolerances{}) {
    ClassificationReport rep;
    rep.ctx = md.ctx;
    auto idx = std::make_shared<WeightIndex>(md.index);
    auto cb = commutant_basis(md);
    rep.commutant_dim = cb.dim;
    auto search = enumerate_ade7(md, cb, idx, caps, tol);
    rep.nodes = search.nodes;
    rep.expected = theorem_expected_list(idx);

    std::vector<bool> used(rep.expected.size(), false);
    int anon = 0;
    for (auto& m : search.found) {
        std::string name;
        for (size_t e = 0; e < rep.expected.size(); ++e)
            if (rep.expected[e].matrix == m) {
                name = rep.expected[e].name;
                used[e] = true;
                break;
            }
        if (name.empty()) {
            name = "UNEXPECTED#" + std::to_string(++anon);
            rep.unexpected.push_back(name);
        }
        m.set_name(name);
        rep.found.push_back({name, std::move(m)});
    }
    for (size_t e = 0; e < rep.expected.size(); ++e)
        if (!used[e]) rep.missing.push_back(rep.expected[e].name);
    rep.match = rep.missing.empty() && rep.unexpected.empty();
    return rep;
}

}  // namespace affmod
