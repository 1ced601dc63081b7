#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "affmod/weight.hpp"

namespace affmod {

inline long long binomial_ll(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

inline long long p_plus_size(const AlgebraContext& ctx) {
    return binomial_ll(ctx.level + ctx.rank, ctx.rank);
}

/// Successor in the fixed enumeration order (lexicographically decreasing on
/// labels, so the vacuum comes first). Returns false at the last tuple.
inline bool next_weight(Weight& w) {
    const int n = static_cast<int>(w.size());
    int i = n - 2;
    while (i >= 0 && w[i] == 0) --i;
    if (i < 0) return false;
    int tail = w[n - 1];
    --w[i];
    w[i + 1] = tail + 1;
    for (int j = i + 2; j < n; ++j) w[j] = 0;
    if (i + 1 != n - 1) w[n - 1] = 0;
    return true;
}

/// Visit all of P+ in enumeration order without materializing it.
template <class Fn>
inline void for_each_weight(const AlgebraContext& ctx, Fn&& fn) {
    Weight w = vacuum_weight(ctx);
    do {
        fn(static_cast<const Weight&>(w));
    } while (next_weight(w));
}

/// All level-k weights in the canonical deterministic order; throws on
/// capacity overflow.
inline std::vector<Weight> enumerate_p_plus(const AlgebraContext& ctx,
                                            long long cap = Capacities{}.weight_cap) {
    const long long n = p_plus_size(ctx);
    if (n > cap)
        throw std::length_error("P+ has " + std::to_string(n) + " weights, above the cap of " +
                                std::to_string(cap));
    std::vector<Weight> out;
    out.reserve(static_cast<size_t>(n));
    for_each_weight(ctx, [&](const Weight& w) { out.push_back(w); });
    return out;
}

/// The ordered weight set together with O(1) lookup of positions.
class WeightIndex {
  public:
    WeightIndex() = default;
    WeightIndex(const AlgebraContext& ctx, long long cap = Capacities{}.weight_cap)
        : ctx_(ctx), weights_(enumerate_p_plus(ctx, cap)) {
        lookup_.reserve(weights_.size() * 2);
        for (size_t i = 0; i < weights_.size(); ++i) lookup_.emplace(weights_[i], static_cast<int>(i));
    }

    const AlgebraContext& ctx() const { return ctx_; }
    int size() const { return static_cast<int>(weights_.size()); }
    const Weight& operator[](int i) const { return weights_[i]; }
    const std::vector<Weight>& all() const { return weights_; }

    int index_of(const Weight& w) const {
        auto it = lookup_.find(w);
        if (it == lookup_.end()) throw std::out_of_range("weight not in P+: " + format_weight(w));
        return it->second;
    }
    bool contains(const Weight& w) const { return lookup_.count(w) != 0; }

    int j_of(int i, int a) const { return index_of(apply_j(weights_[i], a)); }
    int c_of(int i) const { return index_of(apply_c(weights_[i])); }

  private:
    AlgebraContext ctx_;
    std::vector<Weight> weights_;
    std::unordered_map<Weight, int, WeightHash> lookup_;
};

/// Orbit of w under the subgroup generated by J^d (d must divide rbar).
/// Members are listed starting from w, duplicates merged; a fixed point of
/// J_d is a weight whose orbit is shorter than rbar/d.
struct Orbit {
    Weight rep;                   // lexicographically greatest member
    std::vector<Weight> members;  // distinct members
    int subgroup_order = 0;       // rbar / d
    bool fixed_point() const { return static_cast<int>(members.size()) < subgroup_order; }
    int size() const { return static_cast<int>(members.size()); }
};

inline void check_divisor(const AlgebraContext& ctx, int d) {
    if (d < 1 || ctx.rbar % d != 0)
        throw std::invalid_argument("d = " + std::to_string(d) + " does not divide rbar = " +
                                    std::to_string(ctx.rbar));
}

inline Orbit orbit(const Weight& w, int d, const AlgebraContext& ctx) {
    check_divisor(ctx, d);
    Orbit o;
    o.subgroup_order = ctx.rbar / d;
    Weight cur = w;
    for (int j = 0; j < o.subgroup_order; ++j) {
        if (j > 0 && cur == w) break;
        o.members.push_back(cur);
        cur = apply_j(cur, d);
    }
    o.rep = *std::max_element(o.members.begin(), o.members.end());
    return o;
}

inline Weight orbit_rep(const Weight& w, int d, const AlgebraContext& ctx) {
    check_divisor(ctx, d);
    Weight best = w, cur = apply_j(w, d);
    while (cur != w) {
        if (cur > best) best = cur;
        cur = apply_j(cur, d);
    }
    return best;
}

/// Orbit of w under the full diagram symmetry group (J and C).
inline std::vector<Weight> dihedral_orbit(const Weight& w, const AlgebraContext& ctx) {
    std::vector<Weight> out;
    Weight a = w, b = apply_c(w);
    for (int j = 0; j < ctx.rbar; ++j) {
        out.push_back(a);
        out.push_back(b);
        a = apply_j(a, 1);
        b = apply_j(b, 1);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Weight dihedral_rep(const Weight& w, const AlgebraContext& ctx) {
    return dihedral_orbit(w, ctx).front();
}

/// Partition of a weight subset into J^d-orbits, reps in enumeration order.
struct OrbitSet {
    int divisor = 1;
    std::vector<Orbit> orbits;

    const Orbit* find(const Weight& w, const AlgebraContext& ctx) const {
        Weight rep = orbit_rep(w, divisor, ctx);
        for (const auto& o : orbits)
            if (o.rep == rep) return &o;
        return nullptr;
    }
};

inline OrbitSet partition_into_orbits(const std::vector<Weight>& set, int d,
                                      const AlgebraContext& ctx) {
    OrbitSet os;
    os.divisor = d;
    std::unordered_map<Weight, bool, WeightHash> seen;
    for (const auto& w : set) {
        if (seen.count(w)) continue;
        Orbit o = orbit(w, d, ctx);
        for (const auto& m : o.members) seen.emplace(m, true);
        os.orbits.push_back(std::move(o));
    }
    return os;
}

/// P_d = { lambda in P+ : t(lambda) = 0 mod rbar/d }; contains the vacuum and
/// is closed under J^d.
inline std::vector<Weight> parity_set(const AlgebraContext& ctx, int d,
                                      long long cap = Capacities{}.weight_cap) {
    check_divisor(ctx, d);
    const int m = ctx.rbar / d;
    std::vector<Weight> out;
    for (const auto& w : enumerate_p_plus(ctx, cap))
        if (tality(w) % m == 0) out.push_back(w);
    return out;
}

}  // namespace affmod
