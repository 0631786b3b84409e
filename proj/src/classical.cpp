#include "pam/classical.hpp"

namespace pam {

LevelFamily make_dirac(const Point& a, const PrimeContext& ctx, int n_max) {
    int dim = static_cast<int>(a.size());
    return LevelFamily::tabulate(ctx, dim, n_max, [&](int n, const Point& b) -> Q {
        long m = ctx.pow(n);
        for (int k = 0; k < dim; ++k)
            if (mod(a[k] - b[k], m) != 0) return Q(0);
        return Q(1);
    });
}

LevelFamily make_dirac_at(const std::vector<Q>& a, const PrimeContext& ctx, int n_max) {
    int dim = static_cast<int>(a.size());
    return LevelFamily::tabulate(ctx, dim, n_max, [&](int n, const Point& b) -> Q {
        for (int k = 0; k < dim; ++k)
            if (repr_mod(a[k], ctx.p, n) != b[k]) return Q(0);
        return Q(1);
    });
}

LevelFamily make_M(const Q& c, const PrimeContext& ctx, int n_max) {
    if (!is_integral(c, ctx.p)) throw PadicError("make_M: c = " + to_string(c) + " is not p-integral");
    return LevelFamily::tabulate(ctx, 1, n_max, [&](int n, const Point& a) -> Q {
        long pn = ctx.pow(n);
        long r = repr_mod(c, ctx.p, n);
        if (r == 0) r = pn;
        Q v = (c - r) / Q(pn);
        if (1 <= a[0] && a[0] < r) v += 1;
        return v;
    });
}

Q e1_value(const Q& c, long p, int n, long a) {
    long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    a = mod(a, pn);
    long r = repr_mod(Q(a) / c, p, n);
    return frac(a, pn) - c * frac(r, pn) + (c - 1) / 2;
}

LevelFamily make_E1(const Q& c, const PrimeContext& ctx, int n_max) {
    if (!is_unit(c, ctx.p)) throw PadicError("make_E1: c = " + to_string(c) + " is not a p-adic unit");
    return LevelFamily::tabulate(ctx, 1, n_max, [&](int n, const Point& a) -> Q { return e1_value(c, ctx.p, n, a[0]); });
}

LevelFamily make_N2(const Q& c, const PrimeContext& ctx, int n_max) {
    if (!is_unit(c, ctx.p)) throw PadicError("make_N2: c = " + to_string(c) + " is not a p-adic unit");
    return LevelFamily::tabulate(ctx, 2, n_max, [&](int n, const Point& x) -> Q {
        long pn = ctx.pow(n);
        long r = repr_mod(c, ctx.p, n);
        long a = x[0] == 0 ? pn : x[0];
        long b = x[1] == 0 ? pn : x[1];
        Q base = (c - r) / Q(pn);
        Q v = 0;
        if ((1 <= a && a < b && b < r) || (r <= a && a < b && b <= pn)) v -= base;
        if ((1 <= b && b < a && a < r) || (r <= b && b < a && a <= pn)) v += base;
        if (1 <= a && a < b && b < r) v -= 1;
        if (1 <= b && b < a && a < r) v += 1;
        return v;
    });
}

LevelFamily make_D2(const AlphaGammaTables& src, const PrimeContext& ctx) {
    int n_max = static_cast<int>(src.alpha.size()) - 1;
    if (n_max < 0 || src.gamma.size() != src.alpha.size()) throw PadicError("make_D2: table shape mismatch");
    for (int n = 0; n <= n_max; ++n)
        if (static_cast<long>(src.alpha[n].size()) != ctx.pow(n) || static_cast<long>(src.gamma[n].size()) != ctx.pow(n))
            throw PadicError("make_D2: level " + std::to_string(n) + " has the wrong size");
    return LevelFamily::tabulate(ctx, 2, n_max, [&](int n, const Point& x) -> Q {
        long pn = ctx.pow(n);
        const auto& al = src.alpha[n];
        const auto& ga = src.gamma[n];
        long na = mod(-x[0], pn);
        long nb = mod(-x[1], pn);
        long a = x[0] == 0 ? pn : x[0];
        long b = x[1] == 0 ? pn : x[1];
        Q v = ga[nb] - ga[na];
        if (a < b) v += al[na];
        if (b < a) v -= al[nb];
        return v;
    });
}

LevelFamily reflection_solution(const LevelFamily& even_nu, const Q& c) {
    const auto& ctx = even_nu.ctx();
    int nm = even_nu.n_max();
    auto e = make_E1(c, ctx, nm);
    auto d0 = make_dirac({0}, ctx, nm);
    return linear_combine({1, Q(1, 2), (1 - c) / 4}, {even_nu, e, d0});
}

CheckList lemma82_suite(const Q& c, const PrimeContext& ctx, long e, const LevelFamily* even_nu) {
    CheckList out;
    int nm = ctx.n_max;
    auto E = make_E1(c, ctx, nm);
    auto M = make_M(c, ctx, nm);
    auto d0 = make_dirac({0}, ctx, nm);
    auto dc = make_dirac_at({c}, ctx, nm);
    auto Em = scale_action(E, -1);
    std::string tag = "c=" + to_string(c) + " p=" + std::to_string(ctx.p);

    auto lhs1 = E + Em;
    auto rhs1 = (c - 1) * d0;
    auto diff1 = first_difference(lhs1, rhs1, nm, kInfinity);
    out.add("E+E(-x)=(c-1)delta_0 exact " + tag, !diff1, diff1 ? "differs at level " + std::to_string(diff1->first) : "");

    auto lhs2 = translate(E, {c});
    auto rhs2 = linear_combine({1, 1, 1 - c}, {E, M, d0});
    auto diff2 = first_difference(lhs2, rhs2, nm, e);
    out.add("T_c(E)=E+M(c)+(1-c)delta_0 " + tag, !diff2, diff2 ? "differs at level " + std::to_string(diff2->first) : "");

    LevelFamily nu = even_nu ? *even_nu : make_dirac({1}, ctx, nm) + make_dirac({-1}, ctx, nm);
    auto alpha = reflection_solution(nu, c);
    auto refl = alpha - scale_action(alpha, -1);
    auto diff3 = first_difference(refl, E + ((1 - c) / 2) * d0, nm, kInfinity);
    out.add("alpha-alpha(-x)=E+(1-c)/2 delta_0 for the synthetic alpha " + tag, !diff3);

    auto lhs4 = translate(alpha, {c}) - translate(scale_action(alpha, -1), {c});
    auto rhs4 = linear_combine({1, 1, 1 - c, (1 - c) / 2}, {E, M, d0, dc});
    auto diff4 = first_difference(lhs4, rhs4, nm, e);
    out.add("T_c(alpha)-T_c(alpha(-x))=E+M(c)+(1-c)delta_0+(1-c)/2 delta_c " + tag, !diff4,
            diff4 ? "differs at level " + std::to_string(diff4->first) : "");
    return out;
}

namespace {

struct InversionPieces {
    Q lhs;
    std::vector<Q> lower;  // I_j for j < mu
    Q bernoulli_sum;
    long guarantee;
};

MPoly local_power(long base, long pn, int j) {
    MPoly u = (MPoly::var(1, 0) - MPoly::constant(1, Q(base))) * Q(1, pn);
    return u.pow(j);
}

InversionPieces inversion_pieces(const LevelFamily& beta1, const Q& c, int mu, long i, int n, int m, bool printed_cor) {
    const auto& ctx = beta1.ctx();
    long p = ctx.p;
    long pn = ctx.pow(n);
    if (beta1.dim() != 1) throw PadicError("inversion formula needs a one-dimensional measure");
    if (i <= 0 || i >= pn) throw PadicError("inversion formula: i must satisfy 0 < i < p^n");
    if (mu <= 0) throw PadicError("inversion formula: mu must be positive");
    if (n + m > beta1.n_max()) throw PadicError("inversion formula: n + m exceeds n_max");
    if (!is_unit(c, p)) throw PadicError("inversion formula: c is not a unit");
    InversionPieces out;
    auto a = box_integral(beta1, {i}, n, local_power(i, pn, mu), n + m);
    auto b = box_integral(beta1, {pn - i}, n, local_power(pn - i, pn, mu), n + m);
    out.lhs = a.value + ((mu + 1) % 2 == 0 ? Q(1) : Q(-1)) * b.value;
    out.guarantee = std::min(a.guarantee, b.guarantee);
    for (int j = 0; j < mu; ++j) {
        auto v = box_integral(beta1, {i}, n, local_power(i, pn, j), n + m);
        out.lower.push_back(v.value);
        out.guarantee = std::min(out.guarantee, v.guarantee);
    }
    long target = printed_cor ? pn - 1 : pn - i;
    Q r = frac(repr_mod(Q(target) / c, p, n), pn);
    Q x = frac(pn - i, pn);
    Q s = 0;
    for (int j = 0; j <= mu; ++j)
        s += binom(Q(mu), j) * qpow(Q(i - pn), mu - j) * qpow(Q(pn), j) / (j + 1) *
             (bernoulli_poly(j + 1, x) - qpow(c, j + 1) * bernoulli_poly(j + 1, r));
    out.bernoulli_sum = s / qpow(Q(pn), mu);
    return out;
}

}  // namespace

DefectValue thm32_defect(const LevelFamily& beta1, const Q& c, int mu, long i, int n, int m, Variant v) {
    auto pc = inversion_pieces(beta1, c, mu, i, n, m, false);
    Q lower = 0;
    for (int j = 0; j < mu; ++j) lower += binom(Q(mu), j) * pc.lower[j];
    Q sign = mu % 2 == 0 ? Q(1) : Q(-1);
    Q rhs = lower + sign * pc.bernoulli_sum;
    if (v == Variant::Corrected) rhs = -rhs;
    return {pc.lhs - rhs, pc.guarantee};
}

DefectValue cor33_defect(const LevelFamily& beta1, const Q& c, long i, int n, int m, Variant v) {
    bool printed = v == Variant::Printed;
    auto pc = inversion_pieces(beta1, c, 1, i, n, m, printed);
    Q lambda = beta1.value(n, {i});
    Q rhs = printed ? Q(lambda + pc.bernoulli_sum) : Q(pc.bernoulli_sum - lambda);
    return {pc.lhs - rhs, pc.guarantee};
}

}  // namespace pam
