#include "pam/magnus.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pam;

namespace {

const int X = 0;
int Y(int i) { return 1 + i; }

FreeWord random_kernel(std::mt19937_64& rng, long p, int level, int letters) {
    long N = 1;
    for (int k = 0; k < level; ++k) N *= p;
    std::uniform_int_distribution<long> yi(0, N - 1);
    std::uniform_int_distribution<int> coin(0, 2);
    FreeWord w(p, level);
    for (int k = 0; k < letters; ++k) {
        FreeWord y = FreeWord::y(p, level, yi(rng));
        int c = coin(rng);
        if (c == 0)
            w = w * commutator(FreeWord::x(p, level), y);
        else
            w = w * (c == 1 ? y : y.inverse());
    }
    return w;
}

}  // namespace

TEST(Words, ParseAndReduce) {
    FreeWord w = parse_word("[x,y0] y1^-1", 3, 1);
    EXPECT_EQ(w.str(), parse_word("x y0 x^-1 y0^-1 y1^-1", 3, 1).str());
    EXPECT_TRUE(kernel_check(w));
    EXPECT_FALSE(kernel_check(FreeWord::x(3, 1)));
    EXPECT_TRUE(kernel_check(parse_word("y0^3 x y1 x^-1", 3, 1)));
    EXPECT_EQ((w * w.inverse()).reduced().letters().size(), 0u);
    EXPECT_EQ(parse_word("x^3", 3, 1).str(), (FreeWord::x(3, 1) * FreeWord::x(3, 1) * FreeWord::x(3, 1)).str());
    EXPECT_THROW(parse_word("[x,y0", 3, 1), PadicError);
    EXPECT_THROW(parse_word("z", 3, 1), PadicError);
    EXPECT_THROW(parse_word("y9", 3, 1), PadicError);
}

TEST(Words, Projection) {
    FreeWord x1 = FreeWord::x(3, 1);
    EXPECT_EQ(project_pr(x1, 0).str(), parse_word("x^3", 3, 0).str());
    // y_{i + k p^n} maps to x^{-k} y_i x^k
    FreeWord y3 = FreeWord::y(2, 2, 3);
    EXPECT_EQ(project_pr(y3, 1).reduced().str(), parse_word("x^-1 y1 x", 2, 1).str());
}

TEST(Embedding, Commutators) {
    // coefficients from a direct expansion of the four exponentials
    NcSeries s = embed_E(parse_word("[y0,y1]", 2, 1), 3);
    EXPECT_EQ(s.coeff({}), 1);
    EXPECT_EQ(s.coeff({Y(0)}), 0);
    EXPECT_EQ(s.coeff({Y(0), Y(1)}), 1);
    EXPECT_EQ(s.coeff({Y(1), Y(0)}), -1);
    EXPECT_EQ(s.coeff({Y(0), Y(0), Y(1)}), Q(1, 2));
    EXPECT_EQ(s.coeff({Y(0), Y(1), Y(0)}), -1);
    EXPECT_EQ(s.coeff({Y(0), Y(1), Y(1)}), Q(-1, 2));
    EXPECT_EQ(s.coeff({Y(1), Y(0), Y(0)}), Q(1, 2));
    EXPECT_EQ(s.coeff({Y(1), Y(0), Y(1)}), 1);
    EXPECT_EQ(s.coeff({Y(1), Y(1), Y(0)}), Q(-1, 2));
    EXPECT_EQ(s.coeff({Y(0), Y(0), Y(0)}), 0);

    NcSeries t = embed_E(parse_word("[x,y0]", 3, 1), 3);
    Coefficients k{t};
    EXPECT_EQ(k.gamma(0), 1);
    EXPECT_EQ(t.coeff({Y(0), X}), -1);
    EXPECT_EQ(t.coeff({X, X, Y(0)}), Q(1, 2));
    EXPECT_EQ(t.coeff({Y(0), X, Y(0)}), 1);
}

TEST(Embedding, SpecializedAtXZero) {
    EXPECT_EQ(embed_E0(FreeWord::x(3, 1), 3), NcSeries::one(3, 1, 3));
    EXPECT_EQ(embed_E0(FreeWord::y(3, 1, 0), 3), embed_E(FreeWord::y(3, 1, 0), 3));
    NcSeries s = embed_E0(parse_word("[x,y0]", 3, 1), 3);
    for (int g = 0; g < s.gens(); ++g) EXPECT_EQ(s.coeff({g}), 0);
    EXPECT_EQ(specialize_E0(embed_E(parse_word("y1 [x,y0] y2", 3, 1), 3)),
              embed_E0(parse_word("y1 [x,y0] y2", 3, 1), 3));
}

TEST(Embedding, Multiplicative) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        FreeWord a = random_kernel(rng, 2, 2, 3), b = random_kernel(rng, 2, 2, 2);
        EXPECT_EQ(embed_E(a * b, 3), embed_E(a, 3) * embed_E(b, 3));
        EXPECT_EQ(embed_E(a, 3) * embed_E(a.inverse(), 3), NcSeries::one(2, 2, 3));
    }
}

TEST(LogExp, LieAndGroupLike) {
    EXPECT_TRUE(log_lie_check(embed_E(FreeWord::y(2, 1, 0), 3)));
    NcSeries lg = nc_log(embed_E(FreeWord::y(2, 1, 0), 3));
    EXPECT_EQ(lg, NcSeries::generator(2, 1, 3, Y(0)));
    NcSeries c = nc_log(embed_E(parse_word("[y0,y1]", 2, 1), 3)).homogeneous(2);
    NcSeries br = NcSeries(2, 1, 3);
    br.set({Y(0), Y(1)}, 1);
    br.set({Y(1), Y(0)}, -1);
    EXPECT_EQ(c, br);
    NcSeries bad = NcSeries::one(2, 1, 3);
    bad.set({Y(0), Y(1)}, 1);
    EXPECT_FALSE(log_lie_check(bad));
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
        NcSeries s = embed_E(random_kernel(rng, 3, 1, 4), 3);
        EXPECT_TRUE(log_lie_check(s));
        EXPECT_EQ(nc_exp(nc_log(s)), s);
    }
}

TEST(Shuffle, ProductAndRelations) {
    auto sh = shuffle_product({1, 2}, {3});
    long total = 0;
    for (const auto& [w, m] : sh) total += m;
    EXPECT_EQ(total, 3);
    auto sq = shuffle_product({1}, {1});
    ASSERT_EQ(sq.size(), 1u);
    EXPECT_EQ(sq[0].second, 2);
    NcSeries s = embed_E(parse_word("[y0,y1] y0 y1", 2, 1), 3);
    EXPECT_TRUE(shuffle_check(s, {Y(0)}, {Y(1)}));
    EXPECT_TRUE(shuffle_check(s, {Y(0), Y(1)}, {Y(0)}));
    NcSeries t = s;
    t.set({Y(0), Y(1)}, t.coeff({Y(0), Y(1)}) + 1);
    EXPECT_FALSE(shuffle_check(t, {Y(0)}, {Y(1)}));
}

TEST(Projection, CommutesWithEmbedding) {
    FreeWord w = parse_word("y2 [x,y1]", 2, 2);
    EXPECT_EQ(project_pr(embed_E(w, 3), 1), embed_E(project_pr(w, 1), 3));
    std::mt19937_64 rng(21);
    for (int k = 0; k < 5; ++k) {
        FreeWord v = random_kernel(rng, 3, 2, 3);
        EXPECT_EQ(project_pr(embed_E(v, 3), 1), embed_E(project_pr(v, 1), 3));
    }
}

TEST(Measures, BetaOfGenerator) {
    PrimeContext ctx(3, 2);
    auto b = beta_measures(FreeWord::y(3, 2, 0), 1, ctx);
    EXPECT_EQ(b, make_dirac({0}, ctx));
    auto unit = beta_measures(FreeWord::y(3, 2, 0), 0, ctx);
    EXPECT_EQ(unit.dim(), 0);
    EXPECT_EQ(unit.value(0, {}), 1);
}

TEST(Measures, BetaIsDistribution) {
    PrimeContext ctx(2, 2);
    FreeWord g = parse_word("[y0,y1]", 2, 2);
    for (int r = 1; r <= 2; ++r) EXPECT_TRUE(validate_distribution(beta_measures(g, r, ctx)).pass) << r;
}

TEST(Measures, StarIdentity) {
    PrimeContext ctx(3, 1);
    FreeWord g = FreeWord::y(3, 1, 0), h = FreeWord::y(3, 1, 1);
    auto lhs = star_convolution(beta_sequence(g, 2, ctx), beta_sequence(h, 2, ctx));
    auto rhs = beta_sequence(g * h, 2, ctx);
    for (int k = 0; k <= 2; ++k) EXPECT_EQ(lhs.entries[k], rhs.entries[k]) << k;
}

TEST(Congruence, GuaranteedExponent) {
    PrimeContext ctx(3, 3);
    FreeWord g = parse_word("[x,y0]", 3, 3);
    WordShape w{{1, 0}, {0}};
    auto r1 = thm31_congruence(g, w, 1, 1, ctx);
    auto r2 = thm31_congruence(g, w, 1, 2, ctx);
    EXPECT_TRUE(r1.pass);
    EXPECT_TRUE(r2.pass);
    EXPECT_EQ(r2.guarantee, 2);
    EXPECT_GT(r2.guarantee, r1.guarantee);
    EXPECT_GE(r2.achieved, 2);
}

TEST(Transforms, MomentRoundTrip) {
    PrimeContext ctx(2, 3);
    EXPECT_TRUE(prop72_roundtrip(parse_word("[y0,y1]", 2, 3), 2, 3, ctx).pass());
    EXPECT_TRUE(prop72_roundtrip(parse_word("y0 y1", 2, 3), 1, 3, ctx).pass());
}

TEST(Serialize, NcJson) {
    auto js = nc_series_json(embed_E(parse_word("[y0,y1]", 2, 1), 2));
    EXPECT_NE(js.find("Y0.Y1"), std::string::npos);
    EXPECT_EQ(mono_name(parse_mono("X.Y3")), "X.Y3");
}
