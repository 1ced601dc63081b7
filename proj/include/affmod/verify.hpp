#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "affmod/invariant.hpp"
#include "affmod/modular.hpp"
#include "affmod/parallel.hpp"

namespace affmod {

struct VerificationReport {
    bool t_commutes = false;       // selection rule, exact integer check
    double s_commutator = 0.0;     // max |SM - MS|
    bool s_commutes = false;
    bool entries_ok = false;       // finalized, non-negative integers
    bool vacuum_normalized = false;
    bool ade7 = false;             // vacuum row/col inside the dihedral vacuum orbit

    std::vector<int> jl, jr;       // rotation powers hitting the vacuum row/col
    bool jl_group = false, jr_group = false;
    int dl = 0, dr = 0;            // divisors with J_L = <J^dl>, J_R = <J^dr>
    bool balanced = false;         // |J_L| = |J_R|

    std::vector<int> pl, pr;       // row/col support (weight indices)

    bool physical() const {
        return t_commutes && s_commutes && entries_ok && vacuum_normalized;
    }
    bool ade7_type() const { return physical() && ade7; }
};

/// max |SM - MS|, evaluated in row blocks against the sparse M.
inline double s_commutator_norm(const InvariantMatrix& m, const ModularData& md, int workers = 0,
                                int block = 512) {
    const int n = md.size();
    std::vector<std::vector<std::pair<int, long long>>> rows(n);
    for (const auto& [key, v] : m.entries()) rows[key.first].emplace_back(key.second, v);

    const int nblocks = (n + block - 1) / block;
    std::vector<double> dev(nblocks, 0.0);
    parallel_for(
        nblocks,
        [&](long long bi) {
            const int i0 = static_cast<int>(bi) * block;
            const int bs = std::min(block, n - i0);
            Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(bs, n);
            // (MS) rows: each sparse row of M combines rows of S
            for (int r = 0; r < bs; ++r)
                for (const auto& [g, v] : rows[i0 + r])
                    acc.row(r) += static_cast<double>(v) * md.S.row(g);
            // minus (SM): every nonzero M_{g,c} pulls column g of S into column c
            for (const auto& [key, v] : m.entries())
                acc.col(key.second) -=
                    static_cast<double>(v) * md.S.block(i0, key.first, bs, 1);
            dev[bi] = acc.cwiseAbs().maxCoeff();
        },
        workers, 1);
    return *std::max_element(dev.begin(), dev.end());
}

namespace detail {

/// Subgroup recognition inside Z_rbar: the set of firing powers must be
/// exactly the multiples of its gcd with rbar.
inline std::pair<bool, int> subgroup_divisor(const std::vector<int>& powers, int rbar) {
    int g = rbar;
    for (int a : powers) g = std::gcd(g, a);
    const size_t expect = static_cast<size_t>(rbar / g);
    std::set<int> have(powers.begin(), powers.end());
    if (have.size() != expect) return {false, g};
    for (int a = 0; a < rbar; a += g)
        if (!have.count(a)) return {false, g};
    return {true, g};
}

}  // namespace detail

inline VerificationReport verify(const InvariantMatrix& m, const ModularData& md,
                                 const Tolerances& tol = Tolerances{}, int workers = 0) {
    VerificationReport rep;
    const int n = md.size();
    const int rb = md.ctx.rbar;

    rep.entries_ok = m.finalized();
    for (const auto& [key, v] : m.entries())
        if (v < 0) rep.entries_ok = false;

    rep.vacuum_normalized = m(0, 0) == 1;

    // selection rule, exact
    std::vector<long long> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = t_class(md.index[i], md.ctx);
    rep.t_commutes = true;
    for (const auto& [key, v] : m.entries())
        if (cls[key.first] != cls[key.second]) {
            rep.t_commutes = false;
            break;
        }

    rep.s_commutator = s_commutator_norm(m, md, workers);
    rep.s_commutes = rep.s_commutator < tol.tau_m;

    // vacuum row and column structure
    std::set<int> vac_orbit;
    for (const auto& w : dihedral_orbit(vacuum_weight(md.ctx), md.ctx))
        vac_orbit.insert(md.index.index_of(w));
    rep.ade7 = true;
    std::set<int> plset, prset;
    for (const auto& [key, v] : m.entries()) {
        plset.insert(key.first);
        prset.insert(key.second);
        if (key.first == 0 && !vac_orbit.count(key.second)) rep.ade7 = false;
        if (key.second == 0 && !vac_orbit.count(key.first)) rep.ade7 = false;
    }
    rep.pl.assign(plset.begin(), plset.end());
    rep.pr.assign(prset.begin(), prset.end());

    for (int a = 0; a < rb; ++a) {
        if (m(md.jperm[a][0], 0) != 0) rep.jl.push_back(a);
        if (m(0, md.jperm[a][0]) != 0) rep.jr.push_back(a);
    }
    std::tie(rep.jl_group, rep.dl) = detail::subgroup_divisor(rep.jl, rb);
    std::tie(rep.jr_group, rep.dr) = detail::subgroup_divisor(rep.jr, rb);
    rep.balanced = rep.jl.size() == rep.jr.size();
    return rep;
}

/// Structural facts of a verified-physical invariant: equivariance under
/// J_L x J_R, indecomposable block decomposition with Perron radii, the
/// monogamy classification with its value law, the parity-set identity, and
/// the global entry bound.
struct StructuralDiagnostics {
    bool equivariant = false;
    struct Block {
        std::vector<int> members;   // weight indices touching a nonzero entry
        double radius = 0.0;        // Perron radius of the block
        double radius_mmt = 0.0;    // sqrt of the radius of M M^T on the block
    };
    std::vector<Block> blocks;
    bool radii_match_group = false;  // every nonzero block radius = |J_L|
    double max_radius_dev = 0.0;

    long long monogamous_pairs = 0, nonmonogamous_pairs = 0;
    bool value_law = false;          // (3.9)-style value on monogamous pairs

    bool parity_support = false;     // row support = parity set of J_L
    bool entry_bound = false;        // max entry <= M_00 / S_00^2
};

namespace detail {

/// Perron radius by power iteration on the (shifted) non-negative block;
/// the +I shift removes periodic oscillation without moving the radius.
inline double perron_radius(const std::vector<std::vector<double>>& a, double eps = 1e-10) {
    const int n = static_cast<int>(a.size());
    std::vector<double> v(n, 1.0 / std::sqrt(double(n))), w(n);
    double prev = 0.0;
    for (int it = 0; it < 100000; ++it) {
        for (int i = 0; i < n; ++i) {
            double s = v[i];  // shift by identity
            for (int j = 0; j < n; ++j) s += a[i][j] * v[j];
            w[i] = s;
        }
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (int i = 0; i < n; ++i) w[i] /= norm;
        v = w;
        if (it > 3 && std::abs(norm - prev) < eps * std::max(1.0, norm)) return norm - 1.0;
        prev = norm;
    }
    return prev - 1.0;
}

}  // namespace detail

inline StructuralDiagnostics structural_diagnostics(const InvariantMatrix& m,
                                                    const ModularData& md,
                                                    const VerificationReport& rep,
                                                    double radius_tol = 1e-7) {
    StructuralDiagnostics d;
    const int n = md.size();
    const int rb = md.ctx.rbar;

    // J_L x J_R equivariance on every entry
    d.equivariant = true;
    for (const auto& [key, v] : m.entries()) {
        for (int a : rep.jl)
            for (int b : rep.jr)
                if (m(md.jperm[a][key.first], md.jperm[b][key.second]) != v) d.equivariant = false;
    }

    // indecomposable blocks by union-find on the support graph
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [key, v] : m.entries()) parent[find(key.first)] = find(key.second);
    std::map<int, std::vector<int>> groups;
    for (const auto& [key, v] : m.entries()) {
        groups[find(key.first)];  // ensure presence
    }
    for (int i = 0; i < n; ++i) {
        auto it = groups.find(find(i));
        if (it != groups.end()) it->second.push_back(i);
    }

    const double group_order = rep.jl.empty() ? 1.0 : static_cast<double>(rep.jl.size());
    d.radii_match_group = true;
    for (auto& [root, members] : groups) {
        StructuralDiagnostics::Block blk;
        blk.members = members;
        const int bn = static_cast<int>(members.size());
        std::map<int, int> pos;
        for (int i = 0; i < bn; ++i) pos[members[i]] = i;
        std::vector<std::vector<double>> a(bn, std::vector<double>(bn, 0.0));
        for (const auto& [key, v] : m.entries()) {
            auto pi = pos.find(key.first);
            if (pi == pos.end()) continue;
            a[pi->second][pos.at(key.second)] = static_cast<double>(v);
        }
        blk.radius = detail::perron_radius(a);
        std::vector<std::vector<double>> aat(bn, std::vector<double>(bn, 0.0));
        for (int i = 0; i < bn; ++i)
            for (int j = 0; j < bn; ++j) {
                double s = 0.0;
                for (int l = 0; l < bn; ++l) s += a[i][l] * a[j][l];
                aat[i][j] = s;
            }
        blk.radius_mmt = std::sqrt(detail::perron_radius(aat));
        d.max_radius_dev = std::max(d.max_radius_dev, std::abs(blk.radius - group_order));
        d.max_radius_dev = std::max(d.max_radius_dev, std::abs(blk.radius_mmt - group_order));
        if (std::abs(blk.radius - group_order) > radius_tol ||
            std::abs(blk.radius_mmt - group_order) > radius_tol)
            d.radii_match_group = false;
        d.blocks.push_back(std::move(blk));
    }

    // monogamy: the row of l couples only into J_R m, the column of m only
    // into J_L l; on such pairs the entry value is |J_L|/sqrt(|J_L l||J_R m|)
    auto orbit_of = [&](int i, const std::vector<int>& powers) {
        std::set<int> o;
        for (int a : powers) o.insert(md.jperm[a][i]);
        if (powers.empty()) o.insert(i);
        return o;
    };
    std::vector<std::vector<int>> rows(n), cols(n);
    for (const auto& [key, v] : m.entries()) {
        rows[key.first].push_back(key.second);
        cols[key.second].push_back(key.first);
    }
    d.value_law = true;
    for (const auto& [key, v] : m.entries()) {
        const auto right = orbit_of(key.second, rep.jr);
        const auto left = orbit_of(key.first, rep.jl);
        bool mono = true;
        for (int nu : rows[key.first])
            if (!right.count(nu)) mono = false;
        for (int nu : cols[key.second])
            if (!left.count(nu)) mono = false;
        if (!mono) {
            ++d.nonmonogamous_pairs;
            continue;
        }
        ++d.monogamous_pairs;
        const long long jl_order = static_cast<long long>(std::max<size_t>(rep.jl.size(), 1));
        if (v * v * static_cast<long long>(left.size()) * static_cast<long long>(right.size()) !=
            jl_order * jl_order)
            d.value_law = false;
    }

    // row support against the parity set of J_L
    std::set<int> expect;
    const int mdl = rb / std::max(rep.dl, 1);
    for (int i = 0; i < n; ++i)
        if (md.tmod[i] % mdl == 0) expect.insert(i);
    std::set<int> have(rep.pl.begin(), rep.pl.end());
    d.parity_support = have == expect;

    // global bound: no entry above M_00 / S_00^2
    const double bound = static_cast<double>(m(0, 0)) / (md.S(0, 0).real() * md.S(0, 0).real());
    d.entry_bound = true;
    for (const auto& [key, v] : m.entries())
        if (static_cast<double>(v) > bound * (1.0 + 1e-9)) d.entry_bound = false;

    return d;
}

}  // namespace affmod
