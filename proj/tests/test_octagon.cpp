#include "pam/octagon.hpp"

#include <gtest/gtest.h>

using namespace pam;

namespace {

SymSeries at_t(const SymSeries& s, const Q& t) {
    SymSeries r = s;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i].substituted(0, SymPoly(t));
    return r;
}

SymPoly sym(int id) { return SymPoly::symbol(id); }

const std::vector<OctagonConfig>& grid() {
    static const std::vector<OctagonConfig> g{{3, 1, 1}, {3, 1, 2}, {5, 1, 1}, {5, 1, 2}, {5, 1, 3}, {5, 1, 4},
                                              {2, 2, 1}, {2, 2, 3}};
    return g;
}

}  // namespace

TEST(SymPoly, Arithmetic) {
    SymTable tab(3);
    SymPoly t = sym(tab.t()), a = sym(tab.alpha(1)), b = sym(tab.beta(0, 2));
    SymPoly f = (t + SymPoly(1)) * (t - SymPoly(1));
    EXPECT_EQ(f, t * t - SymPoly(1));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_TRUE((a * b).contains(tab.beta(0, 2)));
    EXPECT_FALSE(f.contains(tab.alpha(0)));
    EXPECT_EQ(f.substituted(tab.t(), SymPoly(3)), SymPoly(8));
    EXPECT_EQ((a * t).eval({{tab.t(), Q(2)}, {tab.alpha(1), Q(1, 3)}}), Q(2, 3));
    EXPECT_EQ(tab.alpha(4), tab.alpha(1));
    EXPECT_EQ(tab.name(tab.beta(1, 2)), "b_{1,2}");
}

TEST(SymSeries, InverseIsInverse) {
    OctagonConfig cfg{3, 1, 2};
    SymSeries F = build_factor('C', cfg);
    SymSeries one = SymSeries::one(3, 1);
    EXPECT_EQ(F * series_inverse(F), one);
    EXPECT_EQ(series_inverse(F) * F, one);
}

TEST(Config, Validate) {
    EXPECT_THROW((OctagonConfig{3, 1, 3}).validate(), PadicError);
    EXPECT_THROW((OctagonConfig{4, 1, 1}).validate(), PadicError);
    EXPECT_NO_THROW((OctagonConfig{2, 2, 3}).validate());
}

TEST(E1Sym, ValuesOverT) {
    // E_{1,chi}(a) with chi = 2 + 3t at level 1
    OctagonConfig cfg{3, 1, 2};
    SymTable tab(3);
    SymPoly t = sym(tab.t());
    EXPECT_EQ(e1_sym(cfg, tab, 0), t * SymPoly(Q(3, 2)) + SymPoly(Q(1, 2)));
    EXPECT_EQ(e1_sym(cfg, tab, 1), t * SymPoly(Q(-1, 2)) + SymPoly(Q(-1, 2)));
    EXPECT_EQ(e1_sym(cfg, tab, 2), t * SymPoly(Q(1, 2)) + SymPoly(Q(1, 2)));
    EXPECT_EQ(chi_poly(cfg, tab), SymPoly(2) + SymPoly(3) * t);
}

TEST(Factors, TrivialAtIdentity) {
    for (const auto& cfg : {OctagonConfig{3, 1, 1}, OctagonConfig{2, 2, 1}}) {
        SymSeries one = SymSeries::one(cfg.p, cfg.n);
        for (char f : std::string("BDFHJ")) EXPECT_EQ(at_t(build_factor(f, cfg), 0), one) << f;
        EXPECT_EQ(build_factor('J', cfg), one);
    }
}

TEST(Product, XCoefficientVanishes) {
    for (const auto& cfg : grid()) {
        SymSeries P = octagon_product(cfg);
        EXPECT_TRUE(P[P.idx(0)].is_zero()) << cfg.p << "," << cfg.n << "," << cfg.s;
        EXPECT_EQ(P[P.idx()], SymPoly(1));
    }
}

TEST(Product, AllSymbolsZero) {
    OctagonConfig cfg{3, 1, 1};
    SymSeries P = octagon_product(cfg);
    SymTable tab(3);
    std::map<int, Q> zero;
    for (int id = 0; id < 1 + 2 * 3 + 9; ++id) zero[id] = 0;
    for (size_t i = 0; i < P.size(); ++i) EXPECT_EQ(P[i].eval(zero), i == 0 ? 1 : 0);
}

TEST(Relations, Degree1AtTrivialCharacter) {
    OctagonConfig cfg{3, 1, 1};
    SymTable tab(3);
    RelationSet rs(tab);
    for (const auto& r : deg1_relations(at_t(octagon_product(cfg), 0))) rs.add(r);
    EXPECT_TRUE(rs.reduce(sym(tab.alpha(1)) - sym(tab.alpha(2))).is_zero());
    EXPECT_TRUE(rs.reduce(SymPoly()).is_zero());
    SymPoly q = sym(tab.alpha(1)) * SymPoly(5) + sym(tab.gamma(0));
    EXPECT_EQ(rs.reduce(rs.reduce(q)), rs.reduce(q));
}

TEST(Relations, W12) {
    OctagonConfig one{3, 1, 1};
    SymTable tab(3);
    auto r = w12_relation(one);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_TRUE(r[0].substituted(tab.t(), SymPoly(0)).is_zero());
    EXPECT_EQ(r[1].substituted(tab.t(), SymPoly(0)), sym(tab.alpha(1)) - sym(tab.alpha(2)));
    OctagonConfig two{3, 1, 2};
    auto r2 = w12_relation(two);
    EXPECT_EQ(r2[1], sym(tab.alpha(1)) - sym(tab.alpha(2)) - e1_sym(two, tab, 1));
}

TEST(Relations, RejectsContradiction) {
    SymTable tab(3);
    RelationSet rs(tab);
    EXPECT_THROW(rs.add(SymPoly(1)), PadicError);
    EXPECT_FALSE(rs.add(SymPoly()));
}

TEST(Octagon, SymmetryAndResiduals) {
    for (const auto& cfg : grid()) {
        auto p85 = prop85_check(cfg);
        EXPECT_TRUE(p85.pass) << cfg.p << "," << cfg.n << "," << cfg.s;
        auto r = thm8x_check(cfg);
        EXPECT_TRUE(r.pass) << cfg.p << "," << cfg.n << "," << cfg.s;
        for (const auto& res : r.residuals) EXPECT_TRUE(res.poly.is_zero()) << res.a << "," << res.b;
        EXPECT_TRUE(r.printed_deviation_matches);
        EXPECT_FALSE(r.shuffle_needed);
        if (cfg.s == 1) {
            EXPECT_TRUE(r.has_chi1);
            for (const auto& res : r.chi1_residuals) EXPECT_TRUE(res.poly.is_zero());
        }
    }
}

TEST(Octagon, ResidualJson) {
    auto js = thm8_json(thm8x_check({3, 1, 2}));
    EXPECT_NE(js.find("\"residuals\""), std::string::npos);
}

TEST(Derivation, SubstitutionsReproduceMostFactors) {
    for (const auto& cfg : grid()) {
        for (char f : std::string("BEFGJ")) EXPECT_TRUE(derive_factor_by_subst(f, cfg).pass()) << f;
        EXPECT_EQ(derive_factor_by_subst('A', cfg).diffs.size(), 0u);
    }
}

TEST(Derivation, KnownDisplayErrata) {
    // Derived minus printed is confined to the X.Y_0 / Y_0.X terms for C,
    // to X.Y_0 / Y_0.X / X.X for D and to X.Y_i / Y_i.X (1 <= i < s) for H.
    OctagonConfig cfg{5, 1, 3};
    SymTable tab(5);
    auto c = derive_factor_by_subst('C', cfg);
    ASSERT_EQ(c.diffs.size(), 2u);
    for (const auto& d : c.diffs) {
        EXPECT_TRUE(d.mono == "X.Y0" || d.mono == "Y0.X");
        SymPoly want = d.mono == "X.Y0" ? sym(tab.alpha(0)) : -sym(tab.alpha(0));
        EXPECT_EQ(d.derived - d.display, want);
    }
    auto d = derive_factor_by_subst('D', cfg);
    EXPECT_EQ(d.diffs.size(), 3u);
    auto h = derive_factor_by_subst('H', cfg);
    EXPECT_EQ(h.diffs.size(), 2u * (cfg.s - 1));
    EXPECT_TRUE(derive_factor_by_subst('H', OctagonConfig{5, 1, 1}).pass());
}

TEST(Derivation, DerivedProductIsGroupLike) {
    OctagonConfig cfg{3, 1, 2};
    SymSeries P = octagon_product_derived(cfg);
    EXPECT_TRUE(P[P.idx(0)].is_zero());
}

TEST(DefectMeasure, DefectOfDirac) {
    PrimeContext ctx(3, 2);
    auto h = prop86_defect(make_dirac({1}, ctx), Q(1));
    EXPECT_EQ(h.table(1), (std::vector<Q>{-1, -1, 2}));
    EXPECT_TRUE(validate_distribution(h).pass);
    DiracCombination even{1, {{{1}, Q(1)}, {{-1}, Q(1)}}};
    EXPECT_EQ(prop86_defect(even.to_family(ctx, 2), Q(1)), LevelFamily(ctx, 1, 2));
}
