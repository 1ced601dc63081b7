#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "affmod/classify.hpp"

using namespace affmod;
using Catch::Approx;

namespace {
ModularData& md_for(int r, int k) {
    static std::map<std::pair<int, int>, ModularData> cache;
    auto key = std::make_pair(r, k);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_modular_data(AlgebraContext::make(r, k))).first;
    return it->second;
}

std::set<std::string> names(const ClassificationReport& rep) {
    std::set<std::string> out;
    for (const auto& f : rep.found) out.insert(f.name);
    return out;
}
}  // namespace

TEST_CASE("commutant dimensions at hand-solvable contexts") {
    {
        auto cb = commutant_basis(md_for(1, 1));
        CHECK(cb.dim == 1);  // only the identity
        CHECK(cb.rank_stable);
        CHECK(cb.projector_dim == cb.dim);
    }
    {
        auto cb = commutant_basis(md_for(1, 4));
        CHECK(cb.dim == 2);  // identity and the block direction
        CHECK(cb.rank_stable);
        CHECK(cb.projector_dim == cb.dim);
    }
}

TEST_CASE("catalog invariants lie in the commutant span") {
    for (auto [r, k] : std::vector<std::pair<int, int>>{{1, 16}, {2, 9}, {4, 5}}) {
        auto& md = md_for(r, k);
        auto idx = std::make_shared<WeightIndex>(md.index);
        auto cb = commutant_basis(md);
        INFO("(" << r << "," << k << ") commutant dim " << cb.dim);
        CHECK(cb.rank_stable);
        if (cb.projector_dim >= 0) CHECK(cb.projector_dim == cb.dim);
        CHECK(span_residual(cb, build_identity(idx)) < 1e-7);
        CHECK(span_residual(cb, build_conjugation(idx)) < 1e-7);
        CHECK(span_residual(cb, build_exceptional(idx)) < 1e-7);
        for (int d = 1; d <= md.ctx.rbar; ++d)
            if (md.ctx.rbar % d == 0)
                CHECK(span_residual(cb, build_simple_current(idx, d)) < 1e-7);
    }
}

TEST_CASE("classification at (1,16): identity, block invariant, exceptional") {
    auto rep = classification_report(md_for(1, 16));
    CHECK(rep.match);
    CHECK(names(rep) == std::set<std::string>{"I", "I[J1]", "E(1,16)"});
}

TEST_CASE("classification at (1,4): no exceptional") {
    auto rep = classification_report(md_for(1, 4));
    CHECK(rep.match);
    CHECK(names(rep) == std::set<std::string>{"I", "I[J1]"});
}

TEST_CASE("classification at (2,9): exceptional plus its conjugate") {
    auto rep = classification_report(md_for(2, 9));
    CHECK(rep.match);
    CHECK(names(rep) ==
          std::set<std::string>{"I", "C", "I[J1]", "C.I[J1]", "E(2,9)", "C.E(2,9)"});
}

TEST_CASE("classification sweep at small rank and level") {
    for (int k = 1; k <= 8; ++k) {
        auto rep = classification_report(md_for(1, k));
        INFO("(1," << k << ")");
        CHECK(rep.match);
    }
    for (int k = 1; k <= 6; ++k) {
        auto rep = classification_report(md_for(2, k));
        INFO("(2," << k << ")");
        CHECK(rep.match);
        for (const auto& f : rep.found) {
            CHECK(f.matrix.symmetric());
            // closure under conjugation and transpose inside the found set
            auto idx = f.matrix.index_ptr();
            auto cm = compose(build_conjugation(idx), f.matrix);
            cm.finalize();
            bool has = false;
            for (const auto& g : rep.found)
                if (g.matrix == cm) has = true;
            CHECK(has);
        }
    }
    // (2,2): c = 0 only, and the two divisor invariants at rbar = 3
    auto rep22 = classification_report(md_for(2, 2));
    CHECK(rep22.match);
    for (const auto& f : rep22.found) CHECK(f.name.rfind("C", 0) != 0);
}

TEST_CASE("found sets always re-verify") {
    auto& md = md_for(2, 5);
    auto idx = std::make_shared<WeightIndex>(md.index);
    auto cb = commutant_basis(md);
    auto search = enumerate_ade7(md, cb, idx);
    CHECK(!search.found.empty());
    for (const auto& m : search.found) {
        auto rep = verify(m, md);
        CHECK(rep.ade7_type());
    }
}

TEST_CASE("q-dimension screen verdicts") {
    // regular contexts pass
    for (auto [r, k] : std::vector<std::pair<int, int>>{{6, 7}, {2, 4}, {4, 4}, {10, 11}}) {
        auto ctx = AlgebraContext::make(r, k);
        for (int d = 1; d <= ctx.rbar; ++d)
            if (ctx.rbar % d == 0) {
                INFO("(" << r << "," << k << ") d=" << d);
                CHECK(qdim_screen(ctx, d));
            }
    }
    // marginal and failing contexts
    CHECK_FALSE(qdim_screen(AlgebraContext::make(1, 16), 1));
    CHECK_FALSE(qdim_screen(AlgebraContext::make(8, 3), 3));
    CHECK_FALSE(qdim_screen(AlgebraContext::make(4, 5), 1));
    CHECK_FALSE(qdim_screen(AlgebraContext::make(15, 2), 8));

    // grid corner: the exception set restricted to r <= 4, k <= 6
    auto exceptions = qdim_screen_exceptions(4, 6);
    std::set<std::pair<int, int>> expect = {{1, 2}, {1, 4}, {1, 6}, {2, 3},
                                            {2, 6}, {3, 4}, {3, 6}, {4, 5}, {3, 2}};
    CHECK(exceptions == expect);
}

TEST_CASE("q-dimension degeneracy scan") {
    {
        auto scan = qdim_degeneracy_scan(AlgebraContext::make(8, 3));
        REQUIRE(scan.orbit_reps.size() == 1);
        auto ctx = AlgebraContext::make(8, 3);
        CHECK(scan.orbit_reps[0] == dihedral_rep(fundamental_lift(ctx, 3), ctx));
    }
    {
        auto ctx = AlgebraContext::make(3, 6);
        auto scan = qdim_degeneracy_scan(ctx);
        REQUIRE(scan.orbit_reps.size() == 1);
        CHECK(scan.orbit_reps[0] == dihedral_rep(lift(ctx, {{2, 2}}), ctx));
    }
    {
        auto scan = qdim_degeneracy_scan(AlgebraContext::make(5, 5));
        CHECK(scan.orbit_reps.empty());
    }
    {
        // reference value matches the direct q-dimension
        auto ctx = AlgebraContext::make(4, 5);
        auto scan = qdim_degeneracy_scan(ctx);
        CHECK(scan.reference == Approx(qdim(lambda_gen(ctx, 1), ctx)).epsilon(1e-12));
    }
}
