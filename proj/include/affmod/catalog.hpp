#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "affmod/invariant.hpp"

namespace affmod {

/// Additive pieces of an exceptional invariant, in the orbit shorthand of
/// the catalog: every entry is expanded against the background simple
/// current I[J_d], whose rows and columns at the listed weights are replaced
/// by the terms below.
struct ExceptionalSpec {
    int d = 1;
    std::vector<std::pair<long long, Weight>> diag;             // c |chi_w|^2
    std::vector<Weight> orbit_diag;                             // |<chi_w>_d|^2
    std::vector<std::pair<std::vector<Weight>, std::vector<Weight>>> cross;  // A*B + B*A
};

inline bool exceptional_context(const AlgebraContext& ctx) {
    static const std::set<std::pair<int, int>> supported = {{1, 16}, {2, 9}, {3, 8}, {4, 5},
                                                            {7, 4},  {8, 3}, {15, 2}};
    return supported.count({ctx.rank, ctx.level}) != 0;
}

namespace detail {

inline std::vector<Weight> orbit_members(const Weight& w, int d, const AlgebraContext& ctx) {
    return orbit(w, d, ctx).members;
}

inline ExceptionalSpec exceptional_spec(const AlgebraContext& ctx) {
    const int r = ctx.rank, k = ctx.level;
    ExceptionalSpec s;
    auto orb = [&](const Weight& w) { return orbit_members(w, s.d, ctx); };
    auto one = [](const Weight& w) { return std::vector<Weight>{w}; };

    if (r == 1 && k == 16) {
        s.d = 1;
        s.cross.push_back({orb({14, 2}), one({8, 8})});
        s.diag.push_back({1, {8, 8}});
    } else if (r == 2 && k == 9) {
        s.d = 1;
        s.diag.push_back({2, {3, 3, 3}});
        s.cross.push_back({orb({7, 1, 1}), one({3, 3, 3})});
    } else if (r == 3 && k == 8) {
        s.d = 1;
        s.diag.push_back({2, {2, 2, 2, 2}});
        auto a = orb({5, 0, 1, 2});
        auto b = orb({5, 2, 1, 0});
        a.insert(a.end(), b.begin(), b.end());
        s.cross.push_back({a, one({2, 2, 2, 2})});
        s.cross.push_back({orb({6, 1, 0, 1}), orb({4, 0, 4, 0})});
        s.orbit_diag.push_back({4, 0, 4, 0});
    } else if (r == 4 && k == 5) {
        s.d = 1;
        s.cross.push_back({orb({3, 1, 0, 0, 1}), one({1, 1, 1, 1, 1})});
        s.diag.push_back({4, {1, 1, 1, 1, 1}});
    } else if (r == 7 && k == 4) {
        s.d = 2;
        s.orbit_diag.push_back({2, 0, 0, 0, 2, 0, 0, 0});
        s.orbit_diag.push_back({0, 2, 0, 0, 0, 2, 0, 0});
        s.cross.push_back({orb({2, 1, 0, 0, 0, 0, 0, 1}), orb({2, 0, 0, 0, 2, 0, 0, 0})});
        s.cross.push_back({orb({1, 2, 1, 0, 0, 0, 0, 0}), orb({0, 2, 0, 0, 0, 2, 0, 0})});
        auto a = orb({1, 2, 0, 0, 0, 0, 1, 0});
        auto b = orb({1, 0, 1, 0, 0, 0, 0, 2});
        a.insert(a.end(), b.begin(), b.end());
        s.cross.push_back({a, one({0, 1, 0, 1, 0, 1, 0, 1})});
        auto c = orb({2, 1, 0, 1, 0, 0, 0, 0});
        auto e = orb({2, 0, 0, 0, 0, 1, 0, 1});
        c.insert(c.end(), e.begin(), e.end());
        s.cross.push_back({c, one({1, 0, 1, 0, 1, 0, 1, 0})});
        s.diag.push_back({2, {0, 1, 0, 1, 0, 1, 0, 1}});
        s.diag.push_back({2, {1, 0, 1, 0, 1, 0, 1, 0}});
    } else if (r == 8 && k == 3) {
        s.d = 3;
        const Weight base = lift(ctx, {{3, 1}, {6, 1}});       // L0 + L3 + L6
        const Weight partner = lift(ctx, {{2, 1}, {3, 1}, {4, 1}});  // L2 + L3 + L4
        for (int j = 0; j < 3; ++j) {
            s.diag.push_back({2, apply_j(base, j)});
            s.cross.push_back({orb(apply_j(partner, j)), one(apply_j(base, j))});
        }
    } else if (r == 15 && k == 2) {
        s.d = 8;
        const Weight base = lift(ctx, {{8, 1}});               // L0 + L8
        const Weight partner = lift(ctx, {{3, 1}, {5, 1}});    // L3 + L5
        for (int j = 0; j < 8; ++j) {
            s.diag.push_back({1, apply_j(base, j)});
            s.cross.push_back({orb(apply_j(partner, j)), one(apply_j(base, j))});
        }
    } else {
        throw std::invalid_argument("no exceptional invariant at (" + std::to_string(r) + "," +
                                    std::to_string(k) + ")");
    }
    return s;
}

/// The published projection of the (15,2) exceptional: d = 4 with the even
/// rotations only. The diagonal family runs over J_4-orbit sums (each fixed
/// point of J_8 couples to its J^4 image in the product form).
inline ExceptionalSpec projected_15_2_spec(const AlgebraContext& ctx) {
    ExceptionalSpec s;
    s.d = 4;
    const Weight base = lift(ctx, {{8, 1}});
    const Weight partner = lift(ctx, {{3, 1}, {5, 1}});
    for (int j = 0; j < 2; ++j) s.orbit_diag.push_back(apply_j(base, 2 * j));
    for (int j = 0; j < 4; ++j)
        s.cross.push_back({orbit_members(apply_j(partner, 2 * j), s.d, ctx), {apply_j(base, 2 * j)}});
    return s;
}

inline InvariantMatrix expand_spec(std::shared_ptr<const WeightIndex> index,
                                   const ExceptionalSpec& s, const std::string& name) {
    const auto& ctx = index->ctx();
    // every weight named by a term is exceptional; the background simple
    // current supplies all other rows and columns untouched
    std::set<int> exceptional;
    auto mark = [&](const Weight& w) { exceptional.insert(index->index_of(w)); };
    for (const auto& [c, w] : s.diag) mark(w);
    for (const auto& w : s.orbit_diag)
        for (const auto& m : orbit_members(w, s.d, ctx)) mark(m);
    for (const auto& [a, b] : s.cross) {
        for (const auto& w : a) mark(w);
        for (const auto& w : b) mark(w);
    }

    InvariantMatrix m(index, name);
    const InvariantMatrix bg = build_simple_current(index, s.d);
    for (const auto& [key, v] : bg.entries())
        if (!exceptional.count(key.first) && !exceptional.count(key.second))
            m.add(key.first, key.second, v);

    for (const auto& [c, w] : s.diag) m.add(index->index_of(w), index->index_of(w), c);
    for (const auto& w : s.orbit_diag) {
        const auto mem = orbit_members(w, s.d, ctx);
        for (const auto& a : mem)
            for (const auto& b : mem) m.add(index->index_of(a), index->index_of(b), 1);
    }
    for (const auto& [as, bs] : s.cross)
        for (const auto& a : as)
            for (const auto& b : bs) {
                m.add(index->index_of(a), index->index_of(b), 1);
                m.add(index->index_of(b), index->index_of(a), 1);
            }
    return m;
}

}  // namespace detail

/// E^{(r,k)} for one of the seven supported contexts.
inline InvariantMatrix build_exceptional(std::shared_ptr<const WeightIndex> index) {
    const auto& ctx = index->ctx();
    const auto spec = detail::exceptional_spec(ctx);
    return detail::expand_spec(index, spec,
                               "E(" + std::to_string(ctx.rank) + "," + std::to_string(ctx.level) + ")");
}

/// (1/2) I[J4] . E^{(15,2)}, via the rational-scaled product.
inline InvariantMatrix build_projected_15_2(std::shared_ptr<const WeightIndex> index) {
    const auto& ctx = index->ctx();
    if (ctx.rank != 15 || ctx.level != 2)
        throw std::invalid_argument("the projected exceptional lives at (15,2)");
    auto prod = compose(build_simple_current(index, 4), build_exceptional(index), 1, 2);
    prod.finalize();
    prod.set_name("(1/2)I[J4].E(15,2)");
    return prod;
}

/// Term-list expansion of the projected (15,2) invariant, for cross-checking
/// the product form.
inline InvariantMatrix build_projected_15_2_terms(std::shared_ptr<const WeightIndex> index) {
    return detail::expand_spec(index, detail::projected_15_2_spec(index->ctx()),
                               "(1/2)I[J4].E(15,2)");
}

/// All exceptional invariants attached to this context (the projection
/// included at (15,2)). Throws on unsupported contexts.
inline std::vector<InvariantMatrix> exceptional_catalog(std::shared_ptr<const WeightIndex> index) {
    std::vector<InvariantMatrix> out;
    out.push_back(build_exceptional(index));
    if (index->ctx().rank == 15 && index->ctx().level == 2)
        out.push_back(build_projected_15_2(index));
    return out;
}

}  // namespace affmod
