#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "affmod/fusion.hpp"

using namespace affmod;

namespace {
ModularData& md_for(int r, int k) {
    static std::map<std::pair<int, int>, ModularData> cache;
    auto key = std::make_pair(r, k);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_modular_data(AlgebraContext::make(r, k))).first;
    return it->second;
}

std::map<Weight, long long> verlinde_row(const Weight& lam, const Weight& mu,
                                         const ModularData& md) {
    std::map<Weight, long long> row;
    const int li = md.index.index_of(lam), mi = md.index.index_of(mu);
    for (int ni = 0; ni < md.size(); ++ni) {
        long long v = fusion_verlinde(li, mi, ni, md);
        if (v != 0) row[md.index[ni]] = v;
    }
    return row;
}
}  // namespace

TEST_CASE("Freudenthal multiplicities of small modules") {
    // adjoint of A_r: dominant weights are the highest weight (mult 1) and
    // zero (mult r)
    for (int r : {2, 3, 5}) {
        auto ctx = AlgebraContext::make(r, 4);
        auto dm = weight_multiplicities(lambda_gen(ctx, 1));
        REQUIRE(dm.mult.size() == 2);
        CHECK(dm.mult.at(dm.highest) == 1);
        std::vector<int> zero(ctx.rbar, 1);  // zero weight shifted to the common total
        CHECK(dm.mult.at(zero) == r);
        CHECK(dm.dimension == static_cast<long long>(ctx.rbar) * ctx.rbar - 1);
    }

    // fundamental: a single dominant weight of multiplicity 1, dimension r+1
    for (int r : {1, 2, 4}) {
        auto ctx = AlgebraContext::make(r, 3);
        auto dm = weight_multiplicities(fundamental_lift(ctx, 1));
        CHECK(dm.mult.size() == 1);
        CHECK(dm.dimension == r + 1);
    }

    // dimension against the Weyl product for mu^1 at r=3 (45) and more
    auto c35 = AlgebraContext::make(3, 5);
    auto dmu = weight_multiplicities(mu_gen(c35, 1));
    CHECK(dmu.dimension == 45);
    CHECK(weyl_dimension(mu_gen(c35, 1)) == 45);
    for (const auto& w : enumerate_p_plus(AlgebraContext::make(2, 5)))
        CHECK(weight_multiplicities(w).dimension == weyl_dimension(w));

    // expanded module weights carry the full dimension
    long long total = 0;
    for (const auto& [c, m] : module_weights(dmu)) total += m;
    CHECK(total == 45);
}

TEST_CASE("vacuum fuses as the identity") {
    auto& md = md_for(2, 3);
    const Weight vac = vacuum_weight(md.ctx);
    for (const auto& lam : md.index.all()) {
        auto row = fusion_kac_walton_row(vac, lam, md.ctx);
        REQUIRE(row.size() == 1);
        CHECK(row.at(lam) == 1);
        for (const auto& nu : md.index.all())
            CHECK(fusion_verlinde(vac, lam, nu, md) == (nu == lam ? 1 : 0));
    }
}

TEST_CASE("A1 level 2 fusion values") {
    auto& md = md_for(1, 2);
    CHECK(fusion_verlinde(Weight{1, 1}, Weight{1, 1}, Weight{2, 0}, md) == 1);
    CHECK(fusion_verlinde(Weight{1, 1}, Weight{1, 1}, Weight{1, 1}, md) == 0);
    CHECK(fusion_kac_walton(Weight{1, 1}, Weight{1, 1}, Weight{2, 0}, md.ctx) == 1);
    CHECK(fusion_kac_walton(Weight{1, 1}, Weight{1, 1}, Weight{1, 1}, md.ctx) == 0);
}

TEST_CASE("Verlinde and Kac-Walton agree on every triple") {
    for (auto [r, kmax] : std::vector<std::pair<int, int>>{{1, 6}, {2, 4}, {3, 3}}) {
        for (int k = 1; k <= kmax; ++k) {
            auto& md = md_for(r, k);
            MultiplicityCache cache;
            for (const auto& lam : md.index.all())
                for (const auto& mu : md.index.all()) {
                    auto kw = fusion_kac_walton_row(lam, mu, md.ctx, &cache);
                    auto vl = verlinde_row(lam, mu, md);
                    INFO("(" << r << "," << k << ") " << format_weight(lam) << " x "
                             << format_weight(mu));
                    CHECK(kw == vl);
                }
        }
    }
}

TEST_CASE("fusion table symmetries") {
    auto& md = md_for(3, 4);
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> pick(0, md.size() - 1);
    std::uniform_int_distribution<int> power(0, md.ctx.rbar - 1);

    for (int trial = 0; trial < 50; ++trial) {
        int li = pick(rng), mi = pick(rng), ni = pick(rng);
        long long base = fusion_verlinde(li, mi, ni, md);
        // commutativity
        CHECK(fusion_verlinde(mi, li, ni, md) == base);
        // J-covariance: N_{J^a l, J^b m}^{J^{a+b} n} = N_{l m}^n
        int a = power(rng), b = power(rng);
        int la = md.jperm[a][li], mb = md.jperm[b][mi], nab = md.jperm[(a + b) % md.ctx.rbar][ni];
        CHECK(fusion_verlinde(la, mb, nab, md) == base);
    }

    // associativity spot check on random quadruples
    for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}}) {
        auto& m = md_for(r, k);
        const int n = m.size();
        std::vector<std::vector<std::vector<long long>>> N(
            n, std::vector<std::vector<long long>>(n, std::vector<long long>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) N[i][j][l] = fusion_verlinde(i, j, l, m);
        std::uniform_int_distribution<int> p(0, n - 1);
        for (int trial = 0; trial < 30; ++trial) {
            int a = p(rng), b = p(rng), c = p(rng), d = p(rng);
            long long lhs = 0, rhs = 0;
            for (int s = 0; s < n; ++s) {
                lhs += N[a][b][s] * N[s][c][d];
                rhs += N[b][c][s] * N[a][s][d];
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("adjoint fusion row: closed form") {
    // diagonal coefficient counts nonzero Dynkin labels less one
    auto c29 = AlgebraContext::make(2, 9);
    {
        auto row = fusion_lambda1_row(Weight{3, 3, 3}, c29);
        CHECK(row.at(Weight{3, 3, 3}) == 2);
    }
    {
        auto row = fusion_lambda1_row(vacuum_weight(c29), c29);
        CHECK(row.count(vacuum_weight(c29)) == 0);  // n - 1 = 0
        for (const auto& [nu, v] : row) CHECK(v == 1);
    }

    // closed form == Kac-Walton row for every mu
    for (auto [r, k] : std::vector<std::pair<int, int>>{{3, 5}, {2, 9}}) {
        auto ctx = AlgebraContext::make(r, k);
        MultiplicityCache cache;
        const Weight l1 = lambda_gen(ctx, 1);
        for (const auto& mu : enumerate_p_plus(ctx)) {
            auto kw = fusion_kac_walton_row(l1, mu, ctx, &cache);
            auto cf = fusion_lambda1_row(mu, ctx);
            INFO("mu = " << format_weight(mu));
            CHECK(kw == cf);
        }
    }

    // N_{l1, mu}^mu = n(mu) - 1 straight from the fold
    auto c34 = AlgebraContext::make(3, 4);
    for (const auto& mu : enumerate_p_plus(c34)) {
        int nz = 0;
        for (int v : mu)
            if (v) ++nz;
        CHECK(fusion_kac_walton(lambda_gen(c34, 1), mu, mu, c34) == nz - 1);
    }
}

TEST_CASE("support of lambda^1 x lambda^l") {
    // the support is the 8-term list: lambda^{l-1,l,l+1}, mu^{l-1,l}, their
    // conjugates, and lambda^1 + lambda^l - vacuum
    auto ctx = AlgebraContext::make(5, 6);
    for (int l = 1; 2 * l <= ctx.rbar; ++l) {
        std::set<Weight> expected;
        auto add_lambda = [&](int i) {
            if (i == 0)
                expected.insert(vacuum_weight(ctx));
            else if (2 * i <= ctx.rbar)
                expected.insert(lambda_gen(ctx, i));
        };
        auto add_mu = [&](int j) {
            if (j >= 1 && 2 * j <= ctx.rank) {
                expected.insert(mu_gen(ctx, j));
                expected.insert(apply_c(mu_gen(ctx, j)));
            }
        };
        add_lambda(l - 1);
        add_lambda(l);
        add_lambda(l + 1);
        add_mu(l);
        add_mu(l - 1);
        Weight sum = lambda_gen(ctx, 1);
        const Weight ll = lambda_gen(ctx, l), vac = vacuum_weight(ctx);
        for (int i = 0; i < ctx.rbar; ++i) sum[i] += ll[i] - vac[i];
        bool valid = true;
        for (int v : sum)
            if (v < 0) valid = false;
        if (valid) expected.insert(sum);

        auto row = fusion_kac_walton_row(lambda_gen(ctx, 1), ll, ctx);
        std::set<Weight> support;
        for (const auto& [nu, v] : row) support.insert(nu);
        INFO("l = " << l);
        CHECK(support == expected);
    }
}

TEST_CASE("fusion generators") {
    {
        // (1,16): lambda family {(14,2)}, no mu family, plus the Lambda lift
        auto ctx = AlgebraContext::make(1, 16);
        auto g1 = fusion_generators(ctx, 1);
        CHECK(g1 == std::vector<Weight>{{14, 2}, {16, 0}});
        auto g2 = fusion_generators(ctx, 2);
        CHECK(g2 == std::vector<Weight>{{14, 2}, {15, 1}});
    }
    {
        // rbar <= k with k >= 3: the set has exactly rbar members
        auto ctx = AlgebraContext::make(4, 7);
        for (int d : {1, 5}) CHECK(fusion_generators(ctx, d).size() == size_t(ctx.rbar));
    }
    {
        // rbar > k: the transposed set has exactly k members, and the
        // closed forms of the transposed generators hold
        auto ctx = AlgebraContext::make(7, 4);
        auto gs = fusion_generators(ctx, 2);
        CHECK(gs.size() == 4);
        auto dual = ctx.dual();
        for (int i = 1; 2 * i <= dual.rbar; ++i) {
            Weight expect(ctx.rbar, 0);
            expect[0] = ctx.level - 2 * i;
            expect[1] += i;
            expect[ctx.rank] += i;
            CHECK(rank_level_transpose_prime(lambda_gen(dual, i), dual) == expect);
        }
        // dual mu^j transposes to (k-2j-1)L0 + (j-1)L1 + L2 + (j+1)Lr
        for (int j = 1; 2 * j <= dual.rank; ++j) {
            Weight expect(ctx.rbar, 0);
            expect[0] = ctx.level - 2 * j - 1;
            expect[1] += j - 1;
            expect[2] += 1;
            expect[ctx.rank] += j + 1;
            CHECK(rank_level_transpose_prime(mu_gen(dual, j), dual) == expect);
        }
    }
    {
        // (15,2): lambda^1 plus a rotated vacuum lift
        auto ctx = AlgebraContext::make(15, 2);
        auto gs = fusion_generators(ctx, 8);
        REQUIRE(gs.size() == 2);
        CHECK(gs[0] == lift(ctx, {{1, 1}, {15, 1}}));
    }
    CHECK_THROWS(fusion_generators(AlgebraContext::make(3, 1), 1));
}

TEST_CASE("fusion generators separate J_d-orbits within two rounds") {
    for (auto [r, k] : std::vector<std::pair<int, int>>{{1, 16}, {2, 9}, {3, 8}, {4, 5}, {2, 4}}) {
        auto& md = md_for(r, k);
        for (int d = 1; d <= md.ctx.rbar; ++d) {
            if (md.ctx.rbar % d) continue;
            INFO("(" << r << "," << k << ") d = " << d);
            CHECK(fusion_generator_closure(md, d));
        }
    }
}
