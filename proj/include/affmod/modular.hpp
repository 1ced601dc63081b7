#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "affmod/norms.hpp"
#include "affmod/parallel.hpp"
#include "affmod/qdim.hpp"
#include "affmod/weights.hpp"
#include "affmod/young.hpp"

namespace affmod {

using cd = std::complex<double>;

/// |s| = kbar^{-r/2} rbar^{-1/2}, the modulus of the S-matrix normalization.
inline double s_modulus(const AlgebraContext& ctx) {
    return std::pow(static_cast<double>(ctx.kbar), -0.5 * ctx.rank) / std::sqrt(double(ctx.rbar));
}

/// Row l*rho of S as the explicit positive sine product over positive roots,
/// for 0 <= l <= k/r. The l = 0 row anchors the normalization of the
/// determinant construction.
inline Eigen::VectorXd vacuum_row(const AlgebraContext& ctx, const WeightIndex& index, int ell = 0) {
    if (ell < 0 || ell * ctx.rank > ctx.level)
        throw std::invalid_argument("vacuum_row: need 0 <= l <= k/r");
    const int n = index.size();
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        const auto x = ortho_coords(index[i]);
        double p = s_modulus(ctx);
        for (int a = 0; a < ctx.rbar; ++a)
            for (int b = a + 1; b < ctx.rbar; ++b)
                p *= 2.0 * sin_pi_over(static_cast<long long>(x[a] - x[b]) * (ell + 1), ctx.kbar);
        v[i] = p;
    }
    return v;
}

namespace detail {

constexpr int kMaxRbar = 24;

/// Determinant by in-place Gaussian elimination with partial pivoting.
inline cd det_lu(cd* a, int n) {
    cd det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::norm(a[c * n + c]);
        for (int r = c + 1; r < n; ++r) {
            double v = std::norm(a[r * n + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return cd(0.0);
        if (piv != c) {
            for (int j = c; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
            det = -det;
        }
        const cd d = a[c * n + c];
        det *= d;
        const cd inv = 1.0 / d;
        for (int r = c + 1; r < n; ++r) {
            const cd f = a[r * n + c] * inv;
            if (f == cd(0.0)) continue;
            for (int j = c + 1; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
        }
    }
    return det;
}

}  // namespace detail

/// Kac-Peterson S and T for one context, indexed by the canonical weight
/// order. S is built entry by entry as a phase times an rbar x rbar
/// determinant in orthogonal coordinates (the Weyl sum collapses to that
/// determinant), with the global scale fixed by matching the vacuum row to
/// the sine product of vacuum_row(). Immutable after build.
struct ModularData {
    AlgebraContext ctx;
    WeightIndex index;
    Eigen::MatrixXcd S;
    Eigen::VectorXcd Tdiag;
    double normalization_dev = 0.0;  // max |S(0,i) - vacuum sine product|

    std::vector<int> tmod;               // t(w) mod rbar per index
    std::vector<std::vector<int>> jperm; // jperm[a][i] = index of J^a w_i
    std::vector<int> cperm;              // index of C w_i

    int size() const { return index.size(); }

    double qdim_via_s(int i) const { return S(i, 0).real() / S(0, 0).real(); }
};

inline ModularData build_modular_data(const AlgebraContext& ctx,
                                      const Tolerances& tol = Tolerances{},
                                      const Capacities& caps = Capacities{}, int workers = 0) {
    if (ctx.rbar > detail::kMaxRbar) throw std::length_error("rank too large for the S builder");
    ModularData md;
    md.ctx = ctx;
    md.index = WeightIndex(ctx, caps.weight_cap);
    const int n = md.index.size();
    const int rb = ctx.rbar;
    const long long kb = ctx.kbar;

    // T: unit-modulus diagonal from the exact scaled norms
    md.Tdiag.resize(n);
    const Rational rho2 = rho_norm(ctx);
    for (int i = 0; i < n; ++i) {
        const double expo = static_cast<double>(norm2_scaled(md.index[i])) / (double(rb) * kb) -
                            rho2.value() / rb;
        md.Tdiag[i] = std::polar(1.0, std::numbers::pi * expo);
    }

    // precomputed coordinates and phase tables
    std::vector<std::vector<int>> xs(n);
    std::vector<long long> ts(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = ortho_coords(md.index[i]);
        ts[i] = coord_sum(md.index[i]);
    }
    std::vector<cd> omega(kb);  // exp(-2 pi i u / kbar)
    for (long long u = 0; u < kb; ++u)
        omega[u] = std::polar(1.0, -2.0 * std::numbers::pi * u / kb);
    const long long pm = static_cast<long long>(rb) * kb;
    std::vector<cd> phase(pm);  // exp(+2 pi i m / (rbar kbar))
    for (long long m = 0; m < pm; ++m)
        phase[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / pm);

    auto raw_entry = [&](int i, int j, cd* buf) {
        const auto& x = xs[i];
        const auto& y = xs[j];
        for (int a = 0; a < rb; ++a)
            for (int b = 0; b < rb; ++b)
                buf[a * rb + b] = omega[(static_cast<long long>(x[a]) * y[b]) % kb];
        return phase[(ts[i] * ts[j]) % pm] * detail::det_lu(buf, rb);
    };

    // scale fixed on the vacuum entry, then every entry filled independently
    // (both triangles; symmetry of the result is a checked property)
    const Eigen::VectorXd anchor = vacuum_row(ctx, md.index, 0);
    {
        std::vector<cd> buf(rb * rb);
        const cd u00 = raw_entry(0, 0, buf.data());
        if (std::abs(u00) == 0.0) throw std::runtime_error("degenerate vacuum determinant");
        md.S.resize(n, n);
        const cd sprime = anchor[0] / u00;
        parallel_for(
            n,
            [&](long long i) {
                std::vector<cd> b(rb * rb);
                for (int j = 0; j < n; ++j) md.S(i, j) = sprime * raw_entry(static_cast<int>(i), j, b.data());
            },
            workers);
    }

    md.normalization_dev = (md.S.row(0).real().transpose() - anchor).cwiseAbs().maxCoeff();
    md.normalization_dev = std::max(md.normalization_dev, md.S.row(0).imag().cwiseAbs().maxCoeff());
    if (md.normalization_dev > tol.tau_s)
        throw std::runtime_error("S normalization drifted from the vacuum sine product by " +
                                 std::to_string(md.normalization_dev));

    md.tmod.resize(n);
    md.cperm.resize(n);
    for (int i = 0; i < n; ++i) {
        md.tmod[i] = tality_mod(md.index[i], ctx);
        md.cperm[i] = md.index.c_of(i);
    }
    md.jperm.assign(rb, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        int cur = i;
        for (int a = 0; a < rb; ++a) {
            md.jperm[a][i] = cur;
            cur = md.index.index_of(apply_j(md.index[cur], 1));
        }
    }
    return md;
}

/// Deviations of the defining matrix identities. The products are evaluated
/// in row blocks (upper triangle only; both are symmetric) so peak memory
/// stays near the size of S itself.
struct ModularChecks {
    double symmetry = 0.0;     // max |S - S^T|
    double unitarity = 0.0;    // max |S S^+ - 1|
    double s2_vs_c = 0.0;      // max |S^2 - P_C|
    double phase_law = 0.0;    // max deviation of the simple-current phases
    double vacuum_row_pos = 1.0;  // min over the vacuum row (must stay > 0)
    double max_dev() const { return std::max(std::max(symmetry, unitarity), std::max(s2_vs_c, phase_law)); }
};

inline ModularChecks check_modular_identities(const ModularData& md, int workers = 0,
                                              int block = 256) {
    ModularChecks out;
    const int n = md.size();
    const int rb = md.ctx.rbar;

    out.symmetry = (md.S - md.S.transpose()).cwiseAbs().maxCoeff();
    out.vacuum_row_pos = md.S.row(0).real().minCoeff();

    const int nblocks = (n + block - 1) / block;
    std::vector<double> udev(nblocks, 0.0), cdev(nblocks, 0.0);
    parallel_for(
        nblocks,
        [&](long long bi) {
            const int i0 = static_cast<int>(bi) * block;
            const int bs = std::min(block, n - i0);
            const int m = n - i0;
            Eigen::MatrixXcd G = md.S.middleRows(i0, bs) * md.S.bottomRows(m).adjoint();
            double du = 0.0;
            for (int r = 0; r < bs; ++r)
                for (int c = 0; c < m; ++c) {
                    cd v = G(r, c);
                    if (i0 + r == i0 + c) v -= 1.0;
                    du = std::max(du, std::abs(v));
                }
            udev[bi] = du;
            G.noalias() = md.S.middleRows(i0, bs) * md.S.rightCols(m);
            double dc = 0.0;
            for (int r = 0; r < bs; ++r)
                for (int c = 0; c < m; ++c) {
                    cd v = G(r, c);
                    if (md.cperm[i0 + r] == i0 + c) v -= 1.0;
                    dc = std::max(dc, std::abs(v));
                }
            cdev[bi] = dc;
        },
        workers, 1);
    for (int b = 0; b < nblocks; ++b) {
        out.unitarity = std::max(out.unitarity, udev[b]);
        out.s2_vs_c = std::max(out.s2_vs_c, cdev[b]);
    }

    // S_{J^a l, J^b m} = exp[2 pi i (b t(l) + a t(m) + k a b)/rbar] S_{l m},
    // swept over J-orbit representatives on the left index
    std::vector<cd> unit(rb);
    for (int m = 0; m < rb; ++m) unit[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / rb);
    // left index swept over orbit representatives (the orbit member with the
    // smallest position in the enumeration order); a and b still cover all
    // powers, so every entry relation is exercised
    std::vector<int> reps;
    for (int i = 0; i < n; ++i) {
        bool best = true;
        for (int a = 1; a < rb && best; ++a)
            if (md.jperm[a][i] < i) best = false;
        if (best) reps.push_back(i);
    }
    std::vector<double> pdev(reps.size(), 0.0);
    parallel_for(
        static_cast<long long>(reps.size()),
        [&](long long ri) {
            const int i = reps[ri];
            double dev = 0.0;
            for (int a = 0; a < rb; ++a)
                for (int b = 0; b < rb; ++b) {
                    const int ia = md.jperm[a][i];
                    for (int j = 0; j < n; ++j) {
                        const int jb = md.jperm[b][j];
                        const long long e = (static_cast<long long>(b) * md.tmod[i] +
                                             static_cast<long long>(a) * md.tmod[j] +
                                             static_cast<long long>(md.ctx.level) * a * b) % rb;
                        dev = std::max(dev, std::abs(md.S(ia, jb) - unit[e] * md.S(i, j)));
                    }
                }
            pdev[ri] = dev;
        },
        workers, 1);
    for (double d : pdev) out.phase_law = std::max(out.phase_law, d);
    return out;
}

/// Rank-level duality: entrywise comparison of S with the transposed dual
/// matrix, phase included, plus the T-matrix analogue and the phase-free
/// form on parity-set representatives.
struct DualityReport {
    double s_dev = 0.0;        // full phase-carrying relation, all pairs
    double t_dev = 0.0;        // diagonal T relation, all weights
    double parity_dev = 0.0;   // phase-free form, left index in P_1
    double max_dev() const { return std::max(s_dev, std::max(t_dev, parity_dev)); }
};

inline DualityReport rank_level_check(const ModularData& md, const ModularData& dual) {
    if (!(dual.ctx == md.ctx.dual())) throw std::invalid_argument("mismatched dual context");
    DualityReport rep;
    const int n = md.size();
    const auto& ctx = md.ctx;
    const double scale = std::sqrt(static_cast<double>(ctx.level) / ctx.rbar);
    const long long pm = static_cast<long long>(ctx.rbar) * ctx.level;

    std::vector<int> tmap(n), tpmap(n, -1);
    std::vector<long long> tal(n);
    for (int i = 0; i < n; ++i) {
        tmap[i] = dual.index.index_of(rank_level_transpose(md.index[i], ctx));
        tal[i] = tality(md.index[i]);
        if (tal[i] % ctx.rbar == 0)
            tpmap[i] = dual.index.index_of(rank_level_transpose_prime(md.index[i], ctx));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cd ph = std::polar(1.0, 2.0 * std::numbers::pi * ((tal[i] * tal[j]) % pm) / pm);
            rep.s_dev = std::max(rep.s_dev,
                                 std::abs(md.S(i, j) - scale * ph * std::conj(dual.S(tmap[i], tmap[j]))));
            if (tpmap[i] >= 0)
                rep.parity_dev = std::max(
                    rep.parity_dev, std::abs(md.S(i, j) - scale * std::conj(dual.S(tpmap[i], tmap[j]))));
        }
        const double arg = std::numbers::pi * static_cast<double>(tal[i]) *
                           (static_cast<double>(pm) - tal[i]) / pm;
        const cd lhs = md.Tdiag[i] * std::conj(md.Tdiag[0]);
        const cd rhs = std::polar(1.0, arg) * std::conj(dual.Tdiag[tmap[i]]) * dual.Tdiag[0];
        rep.t_dev = std::max(rep.t_dev, std::abs(lhs - rhs));
    }
    return rep;
}

}  // namespace affmod
