#include "pam/classical.hpp"
#include "pam/magnus.hpp"

#include <gtest/gtest.h>

using namespace pam;

namespace {

std::vector<Q> row(const LevelFamily& mu, int n) { return mu.table(n); }

}  // namespace

TEST(MeasureM, Tables) {
    PrimeContext ctx(3, 2);
    EXPECT_EQ(row(make_M(Q(-1), ctx), 1), (std::vector<Q>{-1, 0, -1}));
    EXPECT_EQ(row(make_M(Q(7), ctx), 2), (std::vector<Q>{0, 1, 1, 1, 1, 1, 1, 0, 0}));
    std::vector<Q> half{Q(-1, 2), Q(1, 2), Q(1, 2), Q(1, 2), Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)};
    EXPECT_EQ(row(make_M(Q(1, 2), ctx), 2), half);
    EXPECT_EQ(make_M(Q(1), ctx), LevelFamily(ctx, 1, 2));
}

TEST(MeasureM, DistributionForUnitsAndNonUnits) {
    PrimeContext ctx(3, 3);
    for (Q c : {Q(7), Q(-2), Q(1, 2), Q(3), Q(-9), Q(0), Q(5, 4)}) {
        auto mu = make_M(c, ctx);
        EXPECT_TRUE(validate_distribution(mu).pass) << c;
        EXPECT_EQ(mu.value(0, {0}), c - 1) << c;
    }
}

TEST(MeasureE1, Tables) {
    PrimeContext ctx(5, 1);
    EXPECT_EQ(row(make_E1(Q(-23), ctx), 1), (std::vector<Q>{-12, 2, -7, 7, -2}));
    PrimeContext c3(3, 2);
    EXPECT_EQ(row(make_E1(Q(7), c3), 2), (std::vector<Q>{3, 0, -3, 1, -2, 2, -1, 3, 0}));
    EXPECT_EQ(make_E1(Q(1), c3), LevelFamily(c3, 1, 2));
}

TEST(MeasureE1, MassAndDistribution) {
    for (long p : {2L, 3L, 5L}) {
        PrimeContext ctx(p, 3);
        for (Q c : {Q(2), Q(7), Q(-1, 3), Q(11, 9)}) {
            if (!is_unit(c, p)) continue;
            auto E = make_E1(c, ctx);
            EXPECT_TRUE(validate_distribution(E).pass);
            EXPECT_EQ(E.value(0, {0}), (c - 1) / 2);
        }
    }
}

TEST(MeasureE1, Moments) {
    // (B_k/k)(1 - c^k), k = 1..6
    const std::vector<Q> want2{Q(1, 2), Q(-1, 4), 0, Q(1, 8), 0, Q(-1, 4)};
    const std::vector<Q> want7{3, -4, 0, 20, 0, Q(-3268, 7)};
    PrimeContext ctx(5, 4);
    for (auto [c, want] : {std::pair{7L, want7}, std::pair{2L, want2}}) {
        auto E = make_E1(Q(c), ctx);
        for (int k = 1; k <= 6; ++k) {
            auto v = box_integral(E, {0}, 0, MPoly::var(1, 0).pow(k - 1), 4);
            Q d = v.value - want[k - 1];
            EXPECT_TRUE(d == 0 || vp(d, 5) >= v.guarantee) << "c=" << c << " k=" << k;
            EXPECT_GE(v.guarantee, 1);
        }
    }
}

TEST(MeasureN2, ZeroForOneAndAntisymmetric) {
    PrimeContext ctx(3, 3);
    EXPECT_EQ(make_N2(Q(1), ctx), LevelFamily(ctx, 2, 3));
    for (Q c : {Q(2), Q(-1), Q(5, 7)}) {
        auto N = make_N2(c, ctx);
        EXPECT_TRUE(validate_distribution(N).pass);
        EXPECT_EQ(swap_coordinates(N), Q(-1) * N);
    }
}

TEST(MeasureD2, FromCommutator) {
    PrimeContext ctx(3, 2);
    FreeWord g = parse_word("[x,y0]", 3, 2);
    auto D = make_D2(alpha_gamma_tables(g, ctx), ctx);
    EXPECT_TRUE(validate_distribution(D).pass);
    EXPECT_EQ(swap_coordinates(D), Q(-1) * D);
}

TEST(ReflectionRelations, Relations) {
    for (auto [c, p] : {std::pair{Q(7), 3L}, std::pair{Q(-2), 5L}, std::pair{Q(1), 3L}, std::pair{Q(2, 5), 3L}}) {
        PrimeContext ctx(p, 3);
        auto r = lemma82_suite(c, ctx, 3);
        EXPECT_TRUE(r.pass()) << (r.first_failure() ? r.first_failure()->name : "");
    }
}

TEST(ReflectionRelations, ReflectionSolution) {
    PrimeContext ctx(5, 3);
    Q c(3);
    DiracCombination nu{1, {{{2}, Q(1)}, {{-2}, Q(1)}, {{0}, Q(4)}}};
    auto alpha = reflection_solution(nu.to_family(ctx, 3), c);
    auto d = alpha - scale_action(alpha, -1);
    auto want = make_E1(c, ctx) + ((1 - c) / 2) * make_dirac({0}, ctx);
    EXPECT_EQ(d, want);
}

TEST(Inversion, CorrectedHoldsPrintedDoesNot) {
    // beta_1 with beta_1 - beta_1 o (-1) = E_{1,c} + (1-c)/2 delta_0
    PrimeContext ctx(3, 6);
    Q c(2);
    DiracCombination nu{1, {{{4}, Q(1)}, {{-4}, Q(1)}, {{7}, Q(-2)}, {{-7}, Q(-2)}}};
    auto beta1 = reflection_solution(nu.to_family(ctx, 6), c);
    int printed_bad = 0;
    for (int mu = 1; mu <= 3; ++mu)
        for (long i = 1; i < 3; ++i) {
            auto d = thm32_defect(beta1, c, mu, i, 1, 5, Variant::Corrected);
            EXPECT_GE(vp(d.defect, 3), d.guarantee) << mu << " " << i;
            auto pr = thm32_defect(beta1, c, mu, i, 1, 5, Variant::Printed);
            if (vp(pr.defect, 3) < pr.guarantee) ++printed_bad;
        }
    EXPECT_GT(printed_bad, 0);
}

TEST(Inversion, CorollaryIsMuOneCase) {
    PrimeContext ctx(3, 4);
    FreeWord g = parse_word("y0 [x,y1] y2^-1 y0", 3, 4);
    auto beta1 = beta_measures(g, 1, ctx);
    for (long i = 1; i < 3; ++i) {
        auto a = thm32_defect(beta1, Q(5), 1, i, 1, 2, Variant::Corrected);
        auto b = cor33_defect(beta1, Q(5), i, 1, 2, Variant::Corrected);
        EXPECT_EQ(a.defect, b.defect);
    }
}
