#include "pam/classical.hpp"
#include "pam/measure.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pam;

namespace {

std::vector<Q> q_list(std::initializer_list<long> v) { return std::vector<Q>(v.begin(), v.end()); }

LevelFamily random_measure(std::mt19937_64& rng, const PrimeContext& ctx, int dim) {
    std::uniform_int_distribution<long> pt(-30, 30), w(-5, 5);
    DiracCombination d{dim, {}};
    for (int k = 0; k < 4; ++k) {
        Point a(dim);
        for (auto& v : a) v = pt(rng);
        d.atoms.push_back({a, Q(w(rng))});
    }
    return d.to_family(ctx, ctx.n_max);
}

}  // namespace

TEST(LevelFamily, EncodeDecodeRoundTrip) {
    PrimeContext ctx(3, 2);
    LevelFamily mu(ctx, 2, 2);
    for (int n = 0; n <= 2; ++n)
        for (size_t i = 0; i < mu.size(n); ++i) EXPECT_EQ(mu.encode(n, mu.decode(n, i)), i);
    EXPECT_EQ(mu.encode(2, {-1, 10}), mu.encode(2, {8, 1}));
}

TEST(Distribution, Examples) {
    PrimeContext ctx(3, 3);
    EXPECT_TRUE(validate_distribution(make_M(Q(-1), ctx)).pass);
    EXPECT_TRUE(validate_distribution(make_dirac({2}, ctx)).pass);
    auto bad = make_M(Q(-1), ctx).perturbed(2, {4}, Q(1));
    auto r = validate_distribution(bad);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.n, 1);
    EXPECT_EQ(r.a, Point{1});
    EXPECT_EQ(r.defect, 1);
}

TEST(Linear, Combinations) {
    PrimeContext ctx(5, 2);
    auto mu = make_E1(Q(7), ctx);
    auto nu = make_M(Q(3), ctx);
    EXPECT_EQ(linear_combine({1, 0}, {mu, nu}), mu);
    EXPECT_EQ(mu + Q(-1) * mu, LevelFamily(ctx, 1, 2));
    auto z = mu + scale_action(mu, -1) - Q(6) * make_dirac({0}, ctx);
    EXPECT_EQ(z, LevelFamily(ctx, 1, 2));
}

TEST(Actions, TranslateAndScale) {
    PrimeContext ctx(3, 3);
    EXPECT_EQ(translate(make_dirac({4}, ctx), {Q(5)}), make_dirac({9}, ctx));
    auto mu = make_M(Q(-2), ctx);
    EXPECT_EQ(translate(mu, {Q(0)}), mu);
    EXPECT_EQ(scale_action(mu, 1), mu);
    EXPECT_EQ(scale_action(make_dirac({2}, ctx), -1), make_dirac({-2}, ctx));
    // translation by a rational point
    EXPECT_EQ(translate(make_dirac({0}, ctx), {Q(1, 2)}), make_dirac_at({Q(1, 2)}, ctx, 3));
}

TEST(Actions, ScaleMultipliesSecondMoment) {
    PrimeContext ctx(5, 3);
    DiracCombination d{1, {{{1}, Q(1)}, {{2}, Q(1)}}};
    auto mu = d.to_family(ctx, 3);
    MPoly x2 = MPoly::var(1, 0).pow(2);
    auto lhs = box_integral(scale_action(mu, 2), {0}, 0, x2, 3);
    auto rhs = box_integral(mu, {0}, 0, x2, 3);
    EXPECT_EQ(lhs.value, 4 * rhs.value);
    EXPECT_EQ(rhs.value, 5);
}

TEST(Actions, AffinePushforward) {
    PrimeContext ctx(3, 3);
    auto mu = make_E1(Q(2), ctx);
    EXPECT_EQ(pushforward_affine(mu, {-1}, {Q(0)}), scale_action(mu, -1));
    EXPECT_EQ(pushforward_affine(make_dirac({0}, ctx), {-1}, {Q(1)}), make_dirac({1}, ctx));
    EXPECT_EQ(pushforward_affine(pushforward_affine(mu, {-1}, {Q(1)}), {-1}, {Q(1)}), mu);
}

TEST(Actions, SignedPermutations) {
    PrimeContext ctx(3, 2);
    std::mt19937_64 rng(3);
    auto mu = random_measure(rng, ctx, 2);
    EXPECT_EQ(signed_perm_action(mu, {0, 1}, {1, 1}), mu);
    auto one = random_measure(rng, ctx, 1);
    EXPECT_EQ(signed_perm_action(one, {0}, {-1}), Q(-1) * scale_action(one, -1));
    LevelFamily sum(ctx, 2, 2);
    auto d00 = make_dirac({0, 0}, ctx);
    for (const auto& perm : std::vector<std::vector<int>>{{0, 1}, {1, 0}})
        for (int e1 : {1, -1})
            for (int e2 : {1, -1}) sum = sum + signed_perm_action(d00, perm, {e1, e2});
    EXPECT_EQ(sum, LevelFamily(ctx, 2, 2));
}

TEST(Actions, ExteriorProductOfDiracs) {
    PrimeContext ctx(5, 2);
    EXPECT_EQ(exterior_product(make_dirac({1}, ctx), make_dirac({3}, ctx)), make_dirac({1, 3}, ctx));
}

TEST(Actions, PreserveDistributions) {
    std::mt19937_64 rng(17);
    PrimeContext ctx(3, 3);
    for (int k = 0; k < 10; ++k) {
        auto a = random_measure(rng, ctx, 1);
        auto b = random_measure(rng, ctx, 1);
        EXPECT_TRUE(validate_distribution(translate(a, {Q(1, 2)})).pass);
        EXPECT_TRUE(validate_distribution(scale_action(a, Q(-5, 7))).pass);
        EXPECT_TRUE(validate_distribution(exterior_product(a, b)).pass);
        EXPECT_TRUE(validate_distribution(signed_perm_action(exterior_product(a, b), {1, 0}, {-1, 1})).pass);
    }
}

TEST(Compare, MeasuresEqual) {
    PrimeContext ctx(3, 3);
    auto mu = make_M(Q(7), ctx);
    EXPECT_TRUE(measures_equal(mu, mu, 3, kInfinity));
    EXPECT_FALSE(measures_equal(make_dirac({0}, ctx), make_dirac({1}, ctx), 1, 1));
    auto E = make_E1(Q(7), ctx);
    auto lhs = translate(E, {Q(7)});
    auto rhs = linear_combine({1, 1, -6}, {E, mu, make_dirac({0}, ctx)});
    EXPECT_TRUE(measures_equal(lhs, rhs, 3, 3));
    // a difference of 9 passes mod 3^2 but not mod 3^3
    auto off = mu.perturbed(1, {0}, Q(9));
    EXPECT_TRUE(measures_equal(off, mu, 3, 2));
    EXPECT_FALSE(measures_equal(off, mu, 3, 3));
}

TEST(BoxIntegral, Basics) {
    PrimeContext ctx(3, 3);
    auto mu = make_M(Q(-1), ctx);
    auto one = box_integral(mu, {0}, 0, MPoly::constant(1, 1), 3);
    EXPECT_EQ(one.value, mu.value(0, {0}));
    auto d = make_dirac({7}, ctx);
    for (int L = 0; L <= 3; ++L) {
        auto v = box_integral(d, {0}, 0, MPoly::var(1, 0), L);
        EXPECT_EQ(mod(v.value.get_num().get_si() - 7, ctx.pow(L)), 0);
    }
    auto a = box_integral(mu, {0}, 0, MPoly::var(1, 0), 2);
    auto b = box_integral(mu, {0}, 0, MPoly::var(1, 0), 3);
    EXPECT_GE(vp(Q(a.value - b.value), 3), 1);
    EXPECT_GE(std::min(a.guarantee, b.guarantee), 1);
}

TEST(BoxIntegral, DiracExact) {
    DiracCombination d{2, {{{4, -1}, Q(2)}, {{1, 5}, Q(-3)}}};
    MPoly f = MPoly::var(2, 0) * MPoly::var(2, 1);
    auto v = box_integral(d, 3, {1, 2}, 1, f);
    EXPECT_EQ(v.value, 2 * 4 * -1 + -3 * 1 * 5);
    EXPECT_EQ(v.guarantee, kInfinity);
    auto w = box_integral(d, 3, {0, 0}, 1, f);
    EXPECT_EQ(w.value, 0);
}

TEST(Iwasawa, DiracAndTranslate) {
    PrimeContext ctx(3, 3);
    auto P = iwasawa_P(translate(make_dirac({0}, ctx), {Q(1)}), 4, 3);
    EXPECT_EQ(P.coeff({0}), 1);
    EXPECT_EQ(P.coeff({1}), 1);
    EXPECT_EQ(P.coeff({2}), 0);
    EXPECT_EQ(P.coeff({3}), 0);
}

TEST(Iwasawa, MOfOneIsZero) {
    PrimeContext ctx(5, 3);
    auto P = iwasawa_P(make_M(Q(1), ctx), 5, 3);
    for (const auto& c : P.coeffs) EXPECT_EQ(c, 0);
}

TEST(Iwasawa, MOfSeven) {
    PrimeContext ctx(3, 4);
    auto P = iwasawa_P(make_M(Q(7), ctx), 6, 4);
    const long want[] = {6, 21, 35, 35, 21, 7};
    for (int k = 0; k < 6; ++k) {
        EXPECT_GE(P.guarantee[k], 4 - vp_factorial(k, 3)) << k;
        Q d = P.coeff({k}) - want[k];
        EXPECT_TRUE(d == 0 || vp(d, 3) >= P.guarantee[k]) << k;
    }
}

TEST(Iwasawa, MomentRouteMatchesSubstitution) {
    PrimeContext ctx(5, 4);
    DiracCombination d{1, {{{1}, Q(1)}, {{3}, Q(2)}}};
    auto mu = d.to_family(ctx, 4);
    auto A = transform_F(mu, 5, 4);
    auto B = transform_F_from_P(iwasawa_P(mu, 5, 4));
    for (size_t i = 0; i < A.size(); ++i) {
        long g = std::min(A.guarantee[i], B.guarantee[i]);
        Q diff = A.coeffs[i] - B.coeffs[i];
        EXPECT_TRUE(diff == 0 || vp(diff, 5) >= g) << i;
    }
    // exact moments: (1 + 2 * 3^j) / j!
    EXPECT_EQ(A.coeff({0}), 3);
    EXPECT_EQ(A.coeff({2}), Q(19, 2));
}

TEST(Iwasawa, BinomialSeries) {
    auto s = binomial_series(Q(-1), 5);
    EXPECT_EQ(s, q_list({1, -1, 1, -1, 1}));
    auto h = binomial_series(Q(1, 2), 3);
    EXPECT_EQ(h[2], Q(-1, 8));
}

TEST(Iwasawa, PermuteAndMultiply) {
    IwasawaPoly P(2, 3, 3);
    for (size_t i = 0; i < P.size(); ++i) {
        P.coeffs[i] = Q(static_cast<long>(i));
        P.guarantee[i] = kInfinity;
    }
    auto S = permute_variables(P, {1, 0});
    EXPECT_EQ(S.coeff({2, 1}), P.coeff({1, 2}));
    auto M = multiply_univariate(P, {{Q(1), Q(1), Q(0)}, {Q(1), Q(0), Q(0)}});
    EXPECT_EQ(M.coeff({1, 0}), P.coeff({1, 0}) + P.coeff({0, 0}));
}

TEST(Serialize, CsvAndJson) {
    PrimeContext ctx(3, 1);
    auto csv = level_table_csv(make_M(Q(-1), ctx));
    EXPECT_NE(csv.find("-1"), std::string::npos);
    auto P = iwasawa_P(make_dirac({1}, ctx), 2, 1);
    auto js = iwasawa_json(P);
    EXPECT_NE(js.find("\"coeff"), std::string::npos);
}
