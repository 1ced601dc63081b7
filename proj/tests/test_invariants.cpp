#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "affmod/catalog.hpp"
#include "affmod/io.hpp"
#include "affmod/verify.hpp"

using namespace affmod;
using Catch::Approx;

namespace {
struct Ctx {
    ModularData md;
    std::shared_ptr<const WeightIndex> idx;
};

Ctx& at(int r, int k) {
    static std::map<std::pair<int, int>, Ctx> cache;
    auto key = std::make_pair(r, k);
    auto it = cache.find(key);
    if (it == cache.end()) {
        Ctx c{build_modular_data(AlgebraContext::make(r, k)), nullptr};
        c.idx = std::make_shared<WeightIndex>(c.md.index);
        it = cache.emplace(key, std::move(c)).first;
    }
    return it->second;
}

int W(const Ctx& c, std::initializer_list<int> labels) { return c.idx->index_of(Weight(labels)); }
}  // namespace

TEST_CASE("identity and conjugation invariants") {
    {
        // C acts trivially at r = 1
        auto& c = at(1, 5);
        CHECK(build_conjugation(c.idx) == build_identity(c.idx));
    }
    {
        auto& c = at(2, 3);
        auto C = build_conjugation(c.idx);
        auto CC = compose(C, C);
        CC.finalize();
        CHECK(CC == build_identity(c.idx));
        CHECK(verify(build_identity(c.idx), c.md).physical());
    }
    {
        auto& c = at(4, 5);
        auto rep = verify(build_conjugation(c.idx), c.md);
        CHECK(rep.physical());
        CHECK(rep.ade7_type());
    }
}

TEST_CASE("simple-current invariant of A1 level 4 is the D4 block matrix") {
    auto& c = at(1, 4);
    auto m = build_simple_current(c.idx, 1);
    CHECK(m(W(c, {4, 0}), W(c, {4, 0})) == 1);
    CHECK(m(W(c, {0, 4}), W(c, {0, 4})) == 1);
    CHECK(m(W(c, {4, 0}), W(c, {0, 4})) == 1);
    CHECK(m(W(c, {0, 4}), W(c, {4, 0})) == 1);
    CHECK(m(W(c, {2, 2}), W(c, {2, 2})) == 2);
    // odd-t rows vanish
    for (int j = 0; j < c.md.size(); ++j) {
        CHECK(m(W(c, {3, 1}), j) == 0);
        CHECK(m(W(c, {1, 3}), j) == 0);
    }
    CHECK(m.nnz() == 5);
    CHECK(verify(m, c.md).physical());
}

TEST_CASE("simple-current edge identities") {
    {
        auto& c = at(3, 5);
        CHECK(build_simple_current(c.idx, 4) == build_identity(c.idx));
    }
    {
        // rbar = k = 2 collapses the two divisors
        auto& c = at(1, 2);
        CHECK(build_simple_current(c.idx, 1) == build_simple_current(c.idx, 2));
    }
}

TEST_CASE("I[J_d] is physical exactly when k'd is even") {
    for (int r = 1; r <= 5; ++r)
        for (int k = 1; k <= 5; ++k) {
            auto& c = at(r, k);
            for (int d = 1; d <= c.md.ctx.rbar; ++d) {
                if (c.md.ctx.rbar % d) continue;
                auto rep = verify(build_simple_current(c.idx, d), c.md);
                INFO("(" << r << "," << k << ") d=" << d << " k'=" << c.md.ctx.kprime);
                CHECK(rep.physical() == ((c.md.ctx.kprime * d) % 2 == 0));
            }
        }
}

TEST_CASE("exceptional at (1,16): entries and verification") {
    auto& c = at(1, 16);
    auto e = build_exceptional(c.idx);
    CHECK(e(W(c, {8, 8}), W(c, {8, 8})) == 1);
    CHECK(e(W(c, {14, 2}), W(c, {8, 8})) == 1);
    CHECK(e(W(c, {2, 14}), W(c, {8, 8})) == 1);
    CHECK(e(W(c, {16, 0}), W(c, {0, 16})) == 1);
    CHECK(e(W(c, {16, 0}), W(c, {16, 0})) == 1);
    // row (12,4) couples to the J-orbit only
    for (int j = 0; j < c.md.size(); ++j) {
        long long v = e(W(c, {12, 4}), j);
        if (j == W(c, {12, 4}) || j == W(c, {4, 12}))
            CHECK(v == 1);
        else
            CHECK(v == 0);
    }
    // no coupling of (14,2) to itself
    CHECK(e(W(c, {14, 2}), W(c, {14, 2})) == 0);

    auto rep = verify(e, c.md);
    CHECK(rep.ade7_type());
    CHECK(e.symmetric());

    // negative control: one flipped entry breaks S-commutation
    auto bad = e;
    bad.set(W(c, {10, 6}), W(c, {6, 10}), 0);
    auto brep = verify(bad, c.md);
    CHECK_FALSE(brep.s_commutes);
}

TEST_CASE("exceptional at (2,9): entries and conjugate partner") {
    auto& c = at(2, 9);
    auto e = build_exceptional(c.idx);
    CHECK(e(W(c, {3, 3, 3}), W(c, {3, 3, 3})) == 2);
    CHECK(e(W(c, {7, 1, 1}), W(c, {3, 3, 3})) == 1);
    CHECK(e(W(c, {3, 3, 3}), W(c, {1, 7, 1})) == 1);
    CHECK(e(W(c, {9, 0, 0}), W(c, {0, 9, 0})) == 1);

    auto rep = verify(e, c.md);
    CHECK(rep.ade7_type());

    auto ce = compose(build_conjugation(c.idx), e);
    ce.finalize();
    CHECK(verify(ce, c.md).ade7_type());
    CHECK_FALSE(ce == e);
    CHECK(ce.symmetric());
}

TEST_CASE("exceptionals verify as physical ADE7 invariants") {
    for (auto [r, k] : std::vector<std::pair<int, int>>{{3, 8}, {4, 5}, {8, 3}}) {
        auto& c = at(r, k);
        auto e = build_exceptional(c.idx);
        auto rep = verify(e, c.md);
        INFO("(" << r << "," << k << ") commutator " << rep.s_commutator);
        CHECK(rep.ade7_type());
        CHECK(e.symmetric());
    }
    CHECK_THROWS(build_exceptional(at(3, 3).idx));
}

TEST_CASE("projected (15,2) invariant: product equals the term list") {
    auto& c = at(15, 2);
    auto proj = build_projected_15_2(c.idx);  // (1/2) I[J4] . E, integral after scaling
    auto terms = build_projected_15_2_terms(c.idx);
    CHECK(proj == terms);
    CHECK(verify(proj, c.md).ade7_type());

    auto cat = exceptional_catalog(c.idx);
    CHECK(cat.size() == 2);
}

TEST_CASE("products with C") {
    auto& c = at(2, 3);
    auto C = build_conjugation(c.idx);
    auto i1 = build_simple_current(c.idx, 1);
    auto prod = compose(C, i1);
    prod.finalize();
    // C . I[J1] = I[J1] at (2,3)
    CHECK(prod == i1);

    // columns permute: (C.M)_{l,m} = M_{C l, m}
    for (const auto& [key, v] : i1.entries())
        CHECK(prod(c.idx->c_of(key.first), key.second) == v);
}

TEST_CASE("non-integral products are rejected") {
    auto& c = at(1, 4);
    auto m = compose(build_identity(c.idx), build_simple_current(c.idx, 1), 1, 2);
    CHECK_THROWS(m.finalize());
}

TEST_CASE("structural diagnostics of the catalog") {
    {
        // identity: every pair monogamous, all blocks radius 1
        auto& c = at(2, 3);
        auto m = build_identity(c.idx);
        auto rep = verify(m, c.md);
        auto diag = structural_diagnostics(m, c.md, rep);
        CHECK(diag.equivariant);
        CHECK(diag.radii_match_group);
        CHECK(diag.nonmonogamous_pairs == 0);
        CHECK(diag.value_law);
        CHECK(diag.parity_support);
        CHECK(diag.entry_bound);
        for (const auto& b : diag.blocks) CHECK(b.members.size() == 1);
    }
    {
        // the (1,16) exceptional: the (14,2)/(8,8) block has Perron radius 2
        auto& c = at(1, 16);
        auto e = build_exceptional(c.idx);
        auto rep = verify(e, c.md);
        REQUIRE(rep.jl.size() == 2);  // J_L = full J group
        auto diag = structural_diagnostics(e, c.md, rep);
        CHECK(diag.radii_match_group);
        CHECK(diag.max_radius_dev < 1e-7);
        bool found = false;
        for (const auto& b : diag.blocks)
            if (std::find(b.members.begin(), b.members.end(), W(c, {8, 8})) != b.members.end()) {
                found = true;
                CHECK(b.members.size() == 3);
                CHECK(b.radius == Approx(2.0).margin(1e-8));
            }
        CHECK(found);
    }
    {
        // fixed-point entry of I[J1] at (1,4): value 2 on a fixed point obeys
        // the orbit-size value law
        auto& c = at(1, 4);
        auto m = build_simple_current(c.idx, 1);
        auto rep = verify(m, c.md);
        auto diag = structural_diagnostics(m, c.md, rep);
        CHECK(diag.value_law);
        CHECK(diag.monogamous_pairs == static_cast<long long>(m.nnz()));
        CHECK(m(W(c, {2, 2}), W(c, {2, 2})) == 2);
    }
}

TEST_CASE("power-iteration fixture: the bordered block has radius 2") {
    // [[1,1,1],[1,0,0],[1,0,0]] has spectral radius 2
    std::vector<std::vector<double>> a = {{1, 1, 1}, {1, 0, 0}, {1, 0, 0}};
    CHECK(affmod::detail::perron_radius(a) == Approx(2.0).margin(1e-9));
    // and it is strictly increasing in the corner entry
    a[0][0] = 2;
    CHECK(affmod::detail::perron_radius(a) > 2.0);
}

TEST_CASE("balance identities for physical invariants") {
    for (auto [r, k, d] : std::vector<std::array<int, 3>>{{2, 9, 1}, {3, 8, 2}, {1, 16, 1}}) {
        auto& c = at(r, k);
        auto m = build_simple_current(c.idx, d);
        auto rep = verify(m, c.md);
        REQUIRE(rep.physical());
        CHECK(rep.balanced);
        CHECK(rep.jl == rep.jr);  // J_L = J_R on the cyclic diagram

        // sum_g S_0g M_g0 = sum_g M_0g S_g0 = |J_L| S_00, and the sandwiched
        // sum collapses to M_00
        cd lhs = 0.0, rhs = 0.0, sandwich = 0.0;
        for (const auto& [key, v] : m.entries()) {
            if (key.second == 0) lhs += static_cast<double>(v) * c.md.S(0, key.first);
            if (key.first == 0) rhs += static_cast<double>(v) * c.md.S(key.second, 0);
            sandwich += static_cast<double>(v) * c.md.S(0, key.first) * c.md.S(key.second, 0);
        }
        const double expect = static_cast<double>(rep.jl.size()) * c.md.S(0, 0).real();
        CHECK(std::abs(lhs - expect) < 1e-10);
        CHECK(std::abs(rhs - expect) < 1e-10);
        CHECK(std::abs(sandwich - cd(1.0)) < 1e-9);
    }
}

TEST_CASE("sign relation between the adjoint and the fixed point at (3,8)") {
    auto& c = at(3, 8);
    const int two_rho = W(c, {2, 2, 2, 2});
    const cd a = c.md.S(two_rho, c.idx->index_of(lambda_gen(c.md.ctx, 1)));
    const cd b = c.md.S(two_rho, W(c, {4, 0, 4, 0}));
    CHECK(std::abs(a) > 1e-6);
    CHECK(std::abs(a + b) < 1e-10);
}

TEST_CASE("invariant JSON round trip") {
    auto& c = at(2, 9);
    auto e = build_exceptional(c.idx);
    auto j = invariant_to_json(e);
    auto back = invariant_from_json(j, c.idx);
    CHECK(back == e);
    CHECK(j.at("entries").size() == e.nnz());
}
