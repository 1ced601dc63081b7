#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "affmod/modular.hpp"

namespace affmod {

/// Real basis of { X : SX = XS, TX = XT }. T is diagonal, so unknowns live
/// only on index pairs with equal T eigenvalue (an exact integer condition);
/// on that support the S-commutation residual is the quadratic form of a
/// small Gram matrix assembled in closed form from S itself, and the basis
/// is its numerical nullspace.
struct CommutantBasis {
    std::vector<std::pair<int, int>> support;  // T-class-equal index pairs
    Eigen::MatrixXd basis;                     // support.size() x dim, orthonormal columns
    int dim = 0;
    Eigen::VectorXd spectrum;                  // ascending eigenvalues of the Gram form
    double gap_low = 0.0, gap_high = 0.0;      // largest null / smallest kept eigenvalue
    bool rank_stable = true;                   // clear separation across the cut
    long long paired_multiplicity_sum = 0;     // sum m_i^2 over S-eigenvalue clusters
    int projector_dim = -1;                    // cross-check dimension, -1 when skipped

    int coord_of(int i, int j) const {
        auto it = lookup.find({i, j});
        return it == lookup.end() ? -1 : it->second;
    }
    std::map<std::pair<int, int>, int> lookup;
};

namespace detail {

/// Orthonormal eigenbasis clusters of the unitary S via Schur (S is normal,
/// so the Schur vectors are an eigenbasis); clusters are eigenvalues within
/// tol on the unit circle.
inline std::vector<Eigen::MatrixXcd> s_eigenprojectors(const ModularData& md, double tol = 1e-7,
                                                       std::vector<int>* mults = nullptr) {
    const int n = md.size();
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(md.S, true);
    const auto& U = schur.matrixU();
    std::vector<cd> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = schur.matrixT()(i, i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::arg(vals[a]) < std::arg(vals[b]); });
    std::vector<Eigen::MatrixXcd> projs;
    size_t start = 0;
    auto flush = [&](size_t s, size_t e) {
        Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(n, n);
        for (size_t t = s; t < e; ++t) {
            const auto u = U.col(order[t]);
            Q.noalias() += u * u.adjoint();
        }
        if (mults) mults->push_back(static_cast<int>(e - s));
        projs.push_back(std::move(Q));
    };
    for (size_t t = 1; t < order.size(); ++t) {
        if (std::abs(vals[order[t]] - vals[order[t - 1]]) > tol) {
            flush(start, t);
            start = t;
        }
    }
    flush(start, order.size());
    // wrap-around: +pi and -pi are the same point on the circle
    if (projs.size() > 1 &&
        std::abs(vals[order.front()] - vals[order.back()]) < tol) {
        projs.front() += projs.back();
        projs.pop_back();
        if (mults) {
            mults->front() += mults->back();
            mults->pop_back();
        }
    }
    return projs;
}

}  // namespace detail

inline CommutantBasis commutant_basis(const ModularData& md, double null_eps = 1e-10,
                                      bool cross_check = true) {
    CommutantBasis cb;
    const int n = md.size();

    std::map<long long, std::vector<int>> classes;
    for (int i = 0; i < n; ++i) classes[t_class(md.index[i], md.ctx)].push_back(i);
    for (const auto& [cls, members] : classes)
        for (int i : members)
            for (int j : members) {
                cb.lookup[{i, j}] = static_cast<int>(cb.support.size());
                cb.support.emplace_back(i, j);
            }
    const int K = static_cast<int>(cb.support.size());

    // ||SM - MS||_F^2 = c^T G c for real coefficients over the support,
    // with G in closed form from single S entries
    Eigen::MatrixXd G(K, K);
    for (int u = 0; u < K; ++u) {
        const auto [l, m] = cb.support[u];
        for (int v = u; v < K; ++v) {
            const auto [lp, mp] = cb.support[v];
            const double g =
                2.0 * ((u == v ? 1.0 : 0.0) -
                       (std::conj(md.S(l, lp)) * md.S(m, mp)).real());
            G(u, v) = g;
            G(v, u) = g;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    cb.spectrum = eig.eigenvalues();
    int dim = 0;
    while (dim < K && cb.spectrum[dim] < null_eps) ++dim;
    cb.dim = dim;
    cb.gap_low = dim > 0 ? std::max(cb.spectrum[dim - 1], 0.0) : 0.0;
    cb.gap_high = dim < K ? cb.spectrum[dim] : std::numeric_limits<double>::infinity();
    cb.rank_stable = cb.gap_high > 1e4 * std::max(cb.gap_low, 1e-14) && cb.gap_high > 1e-6;
    cb.basis = eig.eigenvectors().leftCols(dim);

    if (cross_check) {
        std::vector<int> mults;
        const auto projs = detail::s_eigenprojectors(md, 1e-7, &mults);
        for (int m : mults) cb.paired_multiplicity_sum += static_cast<long long>(m) * m;
        // membership of every basis element under the projector average
        // P(M) = sum_i Q_i M Q_i, an independent route through the spectral
        // decomposition of S
        double worst = 0.0;
        for (int b = 0; b < cb.dim; ++b) {
            Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
            for (int u = 0; u < K; ++u)
                M(cb.support[u].first, cb.support[u].second) = cb.basis(u, b);
            Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
            for (const auto& Q : projs) P.noalias() += Q * M * Q;
            worst = std::max(worst, (M - P).cwiseAbs().maxCoeff());
        }
        if (worst > 1e-6) cb.rank_stable = false;
        // full dimensional agreement is affordable on small supports
        if (static_cast<long long>(K) * K * static_cast<long long>(projs.size()) < 200000000ll) {
            Eigen::MatrixXd G2(K, K);
            for (int u = 0; u < K; ++u) {
                const auto [l, m] = cb.support[u];
                for (int v = u; v < K; ++v) {
                    const auto [lp, mp] = cb.support[v];
                    cd acc = 0.0;
                    for (const auto& Q : projs) acc += Q(l, lp) * std::conj(Q(m, mp));
                    const double g = (u == v ? 1.0 : 0.0) - acc.real();
                    G2(u, v) = g;
                    G2(v, u) = g;
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig2(G2);
            int d2 = 0;
            while (d2 < K && eig2.eigenvalues()[d2] < null_eps) ++d2;
            cb.projector_dim = d2;
        }
    }
    return cb;
}

/// Least-squares coefficients expressing a matrix inside the commutant span,
/// with the residual in the max norm; catalog members must sit in the span.
inline double span_residual(const CommutantBasis& cb, const InvariantMatrix& m) {
    Eigen::VectorXd target = Eigen::VectorXd::Zero(cb.support.size());
    for (const auto& [key, v] : m.entries()) {
        int u = cb.coord_of(key.first, key.second);
        if (u < 0) return std::numeric_limits<double>::infinity();  // outside the T support
        target[u] = static_cast<double>(v);
    }
    if (cb.dim == 0) return target.cwiseAbs().maxCoeff();
    Eigen::VectorXd c = cb.basis.transpose() * target;  // orthonormal columns
    return (target - cb.basis * c).cwiseAbs().maxCoeff();
}

}  // namespace affmod
