#include "pam/suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace pam {

long rand_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Q rand_unit(Rng& rng, long p) {
    while (true) {
        long a = rand_int(rng, -60, 60);
        long b = rand_int(rng, 0, 3) == 0 ? rand_int(rng, 2, 9) : 1;
        if (a == 0 || a % p == 0 || b % p == 0) continue;
        Q c(a, b);
        c.canonicalize();
        return c;
    }
}

FreeWord rand_kernel_word(Rng& rng, long p, int level, int letters) {
    long ny = 1;
    for (int i = 0; i < level; ++i) ny *= p;
    while (true) {
        std::vector<Letter> l;
        for (int k = 0; k < letters; ++k) {
            int gen = static_cast<int>(rand_int(rng, 0, ny));
            l.push_back({gen, rand_int(rng, 0, 1) ? 1 : -1});
        }
        long e = 0;
        for (const auto& x : l)
            if (x.gen == 0) e += x.exp;
        size_t pos = static_cast<size_t>(rand_int(rng, 0, static_cast<long>(l.size())));
        std::vector<Letter> fix;
        for (long k = 0; k < (e < 0 ? -e : e); ++k) fix.push_back({0, e > 0 ? -1 : 1});
        l.insert(l.begin() + static_cast<long>(pos), fix.begin(), fix.end());
        FreeWord w = FreeWord(p, level, l).reduced();
        bool has_y = false;
        for (const auto& x : w.letters())
            if (x.gen != 0) has_y = true;
        if (has_y) return w;
    }
}

DiracCombination rand_dirac(Rng& rng, int dim, int atoms, long spread) {
    DiracCombination d;
    d.dim = dim;
    for (int k = 0; k < atoms; ++k) {
        Point pt(dim);
        for (auto& x : pt) x = rand_int(rng, -spread, spread);
        long w = 0;
        while (w == 0) w = rand_int(rng, -4, 4);
        Q weight(w, rand_int(rng, 1, 2));
        weight.canonicalize();
        d.atoms.emplace_back(pt, weight);
    }
    return d;
}

DiracCombination even_part(const DiracCombination& g) { return g + g.reflected(); }

namespace {

std::string str(long v) { return std::to_string(v); }

std::string point_str(const Point& a) {
    std::string s = "(";
    for (size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
    return s + ")";
}

std::string vp_str(long v) { return v == kInfinity ? "inf" : std::to_string(v); }

std::string shape_str(const std::vector<int>& s) {
    std::string r = "[";
    for (size_t k = 0; k < s.size(); ++k) r += (k ? "," : "") + std::to_string(s[k]);
    return r + "]";
}

void enumerate_shapes(int len, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        enumerate_shapes(len, total - v, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> shapes_upto(int len, int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    enumerate_shapes(len, total, cur, out);
    return out;
}

void for_each_point(int dim, long N, const std::function<void(const Point&)>& fn) {
    Point a(dim, 0);
    while (true) {
        fn(a);
        int k = dim - 1;
        while (k >= 0 && ++a[k] == N) a[k--] = 0;
        if (k < 0) break;
    }
}

}  // namespace

// ---------------------------------------------------------------- transforms

CheckList check_iwasawa_M(bool tamper) {
    CheckList out;
    const int n = 4, K = 6;
    std::vector<Q> cs{Q(7), Q(-2), Q(1, 2)};
    for (long p : {3L, 5L}) {
        PrimeContext ctx(p, n);
        for (const auto& c : cs) {
            LevelFamily M = make_M(c, ctx);
            if (tamper && p == 3 && c == 7) M = M.perturbed(n, {1}, Q(1));
            IwasawaPoly P = iwasawa_P(M, K, n);
            std::string bad;
            long worst = kInfinity;
            for (int k = 0; k < K; ++k) {
                Q want = binom(c, k + 1) - (k == 0 ? 1 : 0);
                long need = n - vp_factorial(k, p);
                long got = vp(Q(P.coeff({k}) - want), p);
                worst = std::min(worst, got == kInfinity ? kInfinity : got - need);
                if ((got < need || P.guarantee[k] < need) && bad.empty())
                    bad = "coefficient T^" + str(k) + ": got " + to_string(P.coeff({k})) + ", expected " + to_string(want) +
                          " mod " + str(p) + "^" + str(need) + " (difference has valuation " + vp_str(got) + ")";
            }
            out.add("P(M(" + to_string(c) + ")) = ((1+T)^c - (1+T))/T, p=" + str(p) + " n=4 K=6", bad.empty(),
                    bad.empty() ? "every coefficient within p^(4 - vp(k!))" : bad);
        }
    }
    return out;
}

CheckList check_e1_moments(bool tamper) {
    CheckList out;
    const long p = 5;
    const int n = 4;
    PrimeContext ctx(p, n);
    for (long c : {2L, 7L}) {
        LevelFamily E = make_E1(Q(c), ctx);
        if (tamper && c == 2) E = E.perturbed(n, {3}, Q(1));
        std::string bad;
        for (int k = 1; k <= 6; ++k) {
            MPoly f = MPoly::var(1, 0).pow(k - 1);
            auto box = box_integral(E, {0}, 0, f, n);
            Q want = bernoulli(k) / k * (1 - qpow(Q(c), k));
            long got = vp(Q(box.value - want), p);
            if (got < box.guarantee && bad.empty())
                bad = "k=" + str(k) + ": integral " + to_string(box.value) + " vs " + to_string(want) + ", valuation " +
                      vp_str(got) + " below guarantee " + str(box.guarantee);
        }
        out.add("moments of E_{1," + str(c) + "} equal (B_k/k)(1-c^k), k<=6, p=5 n=4", bad.empty(), bad);
    }
    return out;
}

CheckList check_group_sum(std::uint64_t seed, bool tamper) {
    CheckList out;
    Rng rng(seed ^ 0x9292ULL);
    const long p = 5;
    const int nmax = 3;
    PrimeContext ctx(p, nmax);
    for (int trial = 0; trial < 2; ++trial) {
        Q c = rand_unit(rng, p);
        while (!is_integral(c, p)) c = rand_unit(rng, p);
        LevelFamily nu = even_part(rand_dirac(rng, 1, 3, 40)).to_family(ctx, nmax);
        LevelFamily alpha = reflection_solution(nu, c);
        LevelFamily beta2 = Q(1, 2) * exterior_product(alpha, alpha);
        if (tamper && trial == 0) beta2 = beta2.perturbed(2, {1, 2}, Q(1));
        LevelFamily sum(ctx, 2, nmax);
        bool first = true;
        for (const auto& perm : std::vector<std::vector<int>>{{0, 1}, {1, 0}})
            for (int e1 : {1, -1})
                for (int e2 : {1, -1}) {
                    LevelFamily g = signed_perm_action(beta2, perm, {e1, e2});
                    sum = first ? g : sum + g;
                    first = false;
                }
        Q u = (1 - c) / 2;
        LevelFamily e = make_E1(c, ctx) + u * make_dirac({0}, ctx);
        LevelFamily target = exterior_product(e, e);
        auto diff = first_difference(sum, target, 2, 3);
        out.add("group sum of beta_2 equals (E_{1,c} + (1-c)/2 delta_0)^2 mod p^3 at level 2, c=" + to_string(c),
                !diff.has_value(), diff ? "first difference at level " + str(diff->first) + " point " + point_str(diff->second) : "");
        bool exact = sum == target;
        out.add("same identity exactly at every level, c=" + to_string(c), exact,
                exact ? "" : "tables differ");

        const int K = 4;
        IwasawaPoly P = iwasawa_P(beta2, K, nmax);
        std::vector<Q> inv(K, Q(0));
        for (int k = 1; k < K; ++k) inv[k] = k % 2 ? Q(-1) : Q(1);
        std::vector<Q> id(K, Q(0));
        id[1] = 1;
        IwasawaPoly lhs;
        bool have = false;
        for (const auto& perm : std::vector<std::vector<int>>{{0, 1}, {1, 0}})
            for (int e1 : {1, -1})
                for (int e2 : {1, -1}) {
                    IwasawaPoly t = permute_variables(P, perm);
                    t = substitute_variables(t, {e1 == 1 ? id : inv, e2 == 1 ? id : inv});
                    if (e1 * e2 == -1)
                        for (auto& x : t.coeffs) x = -x;
                    if (!have) {
                        lhs = t;
                        have = true;
                    } else {
                        for (size_t i = 0; i < t.size(); ++i) {
                            lhs.coeffs[i] += t.coeffs[i];
                            lhs.guarantee[i] = std::min(lhs.guarantee[i], t.guarantee[i]);
                        }
                    }
                }
        // R(T) = (1 - 1/U)/T + (1-c)/2 with (1+T)^c - 1 = c T U(T)
        std::vector<Q> U(K + 1), Uinv(K + 1, Q(0)), R(K, Q(0));
        for (int k = 0; k <= K; ++k) U[k] = binom(c, k + 1) / c;
        Uinv[0] = 1;
        for (int k = 1; k <= K; ++k) {
            Q acc = 0;
            for (int j = 1; j <= k; ++j) acc += U[j] * Uinv[k - j];
            Uinv[k] = -acc;
        }
        for (int k = 0; k < K; ++k) R[k] = -Uinv[k + 1];
        R[0] += u;
        std::string bad;
        long tight = kInfinity;
        for (size_t i = 0; i < lhs.size(); ++i) {
            auto j = lhs.exponent(i);
            Q want = R[j[0]] * R[j[1]];
            long got = vp(Q(lhs.coeffs[i] - want), p);
            tight = std::min(tight, lhs.guarantee[i]);
            if (got < lhs.guarantee[i] && bad.empty())
                bad = "coefficient T1^" + str(j[0]) + " T2^" + str(j[1]) + ": " + to_string(lhs.coeffs[i]) + " vs " +
                      to_string(want);
        }
        out.add("transform identity for beta_2 coefficientwise, p=5 level 3, c=" + to_string(c), bad.empty() && tight > 0,
                bad.empty() ? "smallest guarantee " + vp_str(tight) : bad);
    }
    return out;
}

CheckList check_transform_laws(std::uint64_t seed) {
    CheckList out;
    Rng rng(seed ^ 0x7171ULL);
    const long p = 3;
    const int n = 4;
    PrimeContext ctx(p, n);
    const int K = 5;
    LevelFamily mu = (make_dirac({1}, ctx) + Q(2) * make_dirac({3}, ctx));
    IwasawaPoly F1 = transform_F(mu, K, n);
    IwasawaPoly F2 = transform_F_from_P(iwasawa_P(mu, K, n));
    bool same = F1.coeffs == F2.coeffs;
    out.add("F via moments equals F via T = e^X - 1 for delta_1 + 2 delta_3", same);

    for (int trial = 0; trial < 3; ++trial) {
        LevelFamily nu = rand_dirac(rng, 1, 3, 30).to_family(ctx, n);
        long c = rand_int(rng, -20, 20);
        IwasawaPoly lhs = iwasawa_P(translate(nu, {Q(c)}), K, n);
        IwasawaPoly rhs = multiply_univariate(iwasawa_P(nu, K, n), {binomial_series(Q(c), K)});
        std::string bad;
        for (size_t i = 0; i < lhs.size(); ++i) {
            long e = std::min(lhs.guarantee[i], rhs.guarantee[i]);
            if (vp(Q(lhs.coeffs[i] - rhs.coeffs[i]), p) < e && bad.empty()) bad = "coefficient " + str(static_cast<long>(i));
        }
        out.add("P(T_c mu) = P(mu)(1+T)^c, c=" + str(c), bad.empty(), bad);

        Q d = rand_unit(rng, p);
        while (!is_integral(d, p)) d = rand_unit(rng, p);
        bool comm = scale_action(translate(nu, {Q(c)}), d) == translate(scale_action(nu, d), {d * c});
        out.add("m_d T_c = T_{dc} m_d, d=" + to_string(d), comm);
        std::vector<Q> sub = binomial_series(d, K);
        sub[0] = 0;
        bool integral_sub = true;
        for (const auto& x : sub) integral_sub = integral_sub && is_integral(x, p);
        if (integral_sub) {
            IwasawaPoly a = iwasawa_P(scale_action(nu, d), K, n);
            IwasawaPoly b = substitute_variables(iwasawa_P(nu, K, n), {sub});
            std::string bad2;
            for (size_t i = 0; i < a.size(); ++i) {
                long e = std::min(a.guarantee[i], b.guarantee[i]);
                if (vp(Q(a.coeffs[i] - b.coeffs[i]), p) < e && bad2.empty()) bad2 = "coefficient " + str(static_cast<long>(i));
            }
            out.add("P(m_d mu)(T) = P(mu)((1+T)^d - 1), d=" + to_string(d), bad2.empty(), bad2);
        }
    }
    LevelFamily a = make_dirac({1}, ctx) + make_dirac({2}, ctx);
    LevelFamily b = make_dirac({0}, ctx);
    IwasawaPoly pab = iwasawa_P(exterior_product(a, b), 3, n);
    IwasawaPoly pa = iwasawa_P(a, 3, n), pb = iwasawa_P(b, 3, n);
    bool ok = true;
    for (size_t i = 0; i < pab.size(); ++i) {
        auto j = pab.exponent(i);
        ok = ok && pab.coeffs[i] == pa.coeff({j[0]}) * pb.coeff({j[1]});
    }
    out.add("P(alpha . beta) = P(alpha)(T1) P(beta)(T2)", ok);
    return out;
}

// ---------------------------------------------------------------- measures

CheckList check_reflection_relations(std::uint64_t seed, bool tamper, long e) {
    CheckList out;
    Rng rng(seed ^ 0x8282ULL);
    for (long p : {3L, 5L}) {
        PrimeContext ctx(p, 3);
        for (int k = 0; k < 5; ++k) {
            Q c = rand_unit(rng, p);
            LevelFamily nu = even_part(rand_dirac(rng, 1, 2, 30)).to_family(ctx, 3);
            CheckList l = lemma82_suite(c, ctx, e, &nu);
            for (auto& line : l.lines) line.name += " [p=" + str(p) + ", c=" + to_string(c) + "]";
            out.append(l);
        }
    }
    if (tamper) {
        PrimeContext ctx(3, 3);
        LevelFamily E = make_E1(Q(7), ctx).perturbed(3, {5}, Q(1));
        LevelFamily lhs = E + pushforward_affine(E, {-1}, {Q(0)});
        LevelFamily rhs = Q(6) * make_dirac({0}, ctx);
        auto d = first_difference(lhs, rhs, 3, kInfinity);
        out.add("E + E o (-1) = (c-1) delta_0 on a perturbed E_{1,7}", !d.has_value(),
                d ? "first difference at level " + str(d->first) + " point " + point_str(d->second) : "");
    }
    return out;
}

CheckList check_distributions(long p, int nmax, bool tamper) {
    CheckList out;
    PrimeContext ctx(p, nmax);
    auto check = [&](const std::string& name, const LevelFamily& mu) {
        auto r = validate_distribution(mu);
        out.add("distribution relation for " + name, r.pass, r.pass ? "" : r.describe());
    };
    for (long a : {0L, 2L, -5L}) check("delta_" + str(a), make_dirac({a}, ctx));
    std::vector<Q> cs;
    for (long c : {7L, -2L, 2L, 11L})
        if (c % p != 0) cs.push_back(Q(c));
    if (p != 2) cs.push_back(Q(1, 2));
    for (const auto& c : cs) {
        LevelFamily M = make_M(c, ctx);
        if (tamper && c == cs.front()) M = M.perturbed(nmax, {1}, Q(1));
        check("M(" + to_string(c) + ")", M);
        check("E_{1," + to_string(c) + "}", make_E1(c, ctx));
        LevelFamily N2 = make_N2(c, ctx);
        check("N_2(" + to_string(c) + ")", N2);
        out.add("swap(N_2(" + to_string(c) + ")) = -N_2", swap_coordinates(N2) == Q(-1) * N2);
    }
    check("M(" + str(p) + ")", make_M(Q(p), ctx));
    int lvl = std::min(nmax, 2);
    PrimeContext c2(p, lvl);
    FreeWord g = parse_word("[x,y0]", p, lvl);
    LevelFamily D2 = make_D2(alpha_gamma_tables(g, c2), c2);
    check("D_2 from g = [x,y0], n_max=" + str(lvl), D2);
    out.add("swap(D_2) = -D_2 for g = [x,y0]", swap_coordinates(D2) == Q(-1) * D2);
    return out;
}

CheckList check_padic_laws(std::uint64_t seed) {
    CheckList out;
    Rng rng(seed ^ 0x5151ULL);
    bool ok = true;
    for (int k = 1; k <= 8; ++k)
        for (int t = 0; t < 3; ++t) {
            Q x(rand_int(rng, -20, 20), rand_int(rng, 1, 6));
            x.canonicalize();
            ok = ok && bernoulli_poly(k, x + 1) - bernoulli_poly(k, x) == k * qpow(x, k - 1);
        }
    out.add("B_k(x+1) - B_k(x) = k x^(k-1), k<=8", ok);
    bool bin = true;
    for (long a = -12; a <= 12; ++a)
        for (long k = 0; k <= 8; ++k)
            for (long p : {2L, 3L, 5L}) bin = bin && is_integral(binom(Q(a), k), p);
    out.add("binom(a,k) is p-integral for integer a", bin);
    bool rep = true;
    for (long p : {3L, 5L})
        for (int t = 0; t < 10; ++t) {
            Q c = rand_unit(rng, p);
            for (int n = 1; n < 4; ++n) rep = rep && mod(repr_mod(c, p, n + 1) - repr_mod(c, p, n), PrimeContext(p, 4).pow(n)) == 0;
        }
    out.add("<c>_{n+1} = <c>_n mod p^n", rep);
    return out;
}

// ---------------------------------------------------------------- octagon

std::vector<OctagonConfig> octagon_configs(long p, int n, std::optional<long> s) {
    std::vector<OctagonConfig> out;
    OctagonConfig base{p, n, 1};
    long N = base.N();
    if (s) {
        OctagonConfig c{p, n, *s};
        c.validate();
        out.push_back(c);
        return out;
    }
    for (long u = 1; u < N; ++u)
        if (u % p != 0) out.push_back({p, n, u});
    return out;
}

std::vector<OctagonConfig> octagon_grid() {
    std::vector<OctagonConfig> out;
    for (auto [p, n] : std::vector<std::pair<long, int>>{{3, 1}, {5, 1}, {2, 2}}) {
        auto v = octagon_configs(p, n, std::nullopt);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

namespace {

std::string cfg_str(const OctagonConfig& c) { return "(p=" + str(c.p) + ", n=" + str(c.n) + ", s=" + str(c.s) + ")"; }

}  // namespace

CheckList check_octagon(const std::vector<OctagonConfig>& cfgs, bool tamper, std::vector<std::string>* documents) {
    CheckList out;
    bool first = true;
    for (const auto& cfg : cfgs) {
        SymTable tab(cfg.N());
        SymmetryReport p85 = prop85_check(cfg);
        out.add("octagon product has constant term 1 and no X term " + cfg_str(cfg), p85.x_coeff_zero);
        out.add("degree-one octagon relations follow from the reflection axiom " + cfg_str(cfg), p85.pass,
                p85.leftover.empty() ? "rank " + str(static_cast<long>(p85.deg1_rank)) : "left over: " + p85.leftover.front());
        ResidualReport r = thm8x_check(cfg);
        if (tamper && first) {
            // Shift one Y_aY_b residual as if the product coefficient had changed.
            r.residuals[1].poly += SymPoly::symbol(tab.t());
            r.pass = false;
        }
        first = false;
        const Residual* bad = nullptr;
        for (const auto& x : r.residuals)
            if (!x.poly.is_zero()) {
                bad = &x;
                break;
            }
        out.add("Y_aY_b coefficients match the measure display " + cfg_str(cfg), bad == nullptr,
                bad ? "residual at (a,b)=(" + str(bad->a) + "," + str(bad->b) + "): " + bad->poly.str(tab)
                    : str(static_cast<long>(r.residuals.size())) + " residuals are 0");
        out.add("printed display differs exactly by -T_chi(alpha)(a) M(chi)(b) " + cfg_str(cfg), r.printed_deviation_matches,
                str(static_cast<long>(r.printed_nonzero)) + " printed residuals nonzero");
        if (r.has_chi1) {
            const Residual* b1 = nullptr;
            for (const auto& x : r.chi1_residuals)
                if (!x.poly.is_zero()) {
                    b1 = &x;
                    break;
                }
            out.add("chi = 1 display (t = 0) matches " + cfg_str(cfg), b1 == nullptr,
                    b1 ? "residual at (" + str(b1->a) + "," + str(b1->b) + "): " + b1->poly.str(tab) : "");
        }
        out.add("no shuffle relations needed " + cfg_str(cfg), !r.shuffle_needed || bad == nullptr);
        if (documents) documents->push_back(thm8_json(r));
    }
    return out;
}

CheckList check_derive_factors(const std::vector<OctagonConfig>& cfgs, const std::string& names) {
    CheckList out;
    for (const auto& cfg : cfgs) {
        SymTable tab(cfg.N());
        for (char f : names) {
            DeriveReport d = derive_factor_by_subst(f, cfg);
            std::string detail;
            for (const auto& x : d.diffs) {
                if (!detail.empty()) detail += "; ";
                detail += x.mono + ": substitution " + x.derived.str(tab) + ", display " + x.display.str(tab);
            }
            out.add(std::string("factor ") + f + " from the substitution lemma equals its display " + cfg_str(cfg), d.pass(),
                    detail);
        }
    }
    return out;
}

namespace {

// Differences (substitution minus display) that the printed C, D and H
// displays are known to carry.
std::map<std::string, SymPoly> known_errata(char f, const OctagonConfig& cfg, const SymTable& tab) {
    std::map<std::string, SymPoly> m;
    SymPoly t = SymPoly::symbol(tab.t());
    if (f == 'C') {
        m["X.Y0"] = SymPoly::symbol(tab.alpha(0));
        m["Y0.X"] = -SymPoly::symbol(tab.alpha(0));
    } else if (f == 'D') {
        m["X.Y0"] = t * SymPoly(Q(-1, 2));
        m["Y0.X"] = t * SymPoly(Q(1, 2));
        m["X.X"] = t * t * SymPoly(Q(1, 2));
    } else if (f == 'H') {
        for (long i = 1; i < cfg.s; ++i) {
            m["X.Y" + str(i)] = t * SymPoly(-2);
            m["Y" + str(i) + ".X"] = t * SymPoly(2);
        }
    }
    return m;
}

}  // namespace

CheckList check_display_errata(const std::vector<OctagonConfig>& cfgs) {
    CheckList out;
    for (const auto& cfg : cfgs) {
        SymTable tab(cfg.N());
        for (char f : std::string("BCDEFGHJ")) {
            DeriveReport d = derive_factor_by_subst(f, cfg);
            auto want = known_errata(f, cfg, tab);
            bool ok = d.diffs.size() == want.size();
            std::string detail;
            for (const auto& x : d.diffs) {
                auto it = want.find(x.mono);
                if (it == want.end() || x.derived - x.display != it->second) {
                    ok = false;
                    if (detail.empty()) detail = "unexpected difference at " + x.mono;
                }
            }
            std::string name = want.empty() ? std::string("factor ") + f + " equals its display"
                                            : std::string("factor ") + f + " differs from its display only by the known X-terms";
            out.add(name + " " + cfg_str(cfg), ok, detail);
        }
    }
    return out;
}

// ---------------------------------------------------------------- magnus

CheckList check_magnus(std::uint64_t seed, long p, int nmax, int D, int nwords, bool tamper) {
    CheckList out;
    Rng rng(seed ^ (0x7777ULL + static_cast<std::uint64_t>(p) * 131 + static_cast<std::uint64_t>(nmax)));
    PrimeContext ctx(p, nmax);
    std::string cfg = " (p=" + str(p) + ", n_max=" + str(nmax) + ", D=" + str(D) + ")";
    std::vector<FreeWord> words;
    for (int k = 0; k < nwords; ++k) words.push_back(rand_kernel_word(rng, p, nmax, static_cast<int>(rand_int(rng, 3, 6))));

    for (int wi = 0; wi < nwords; ++wi) {
        const FreeWord& g = words[wi];
        std::string tag = " for " + g.str() + cfg;
        NcSeries s = embed_E(g, D);
        if (tamper && wi == 0) s[s.index({1, 1})] += 1;
        // shuffle relations over all monomial pairs of total degree <= D
        std::vector<Mono> monos;
        for (size_t i = 1; i < s.size(); ++i) monos.push_back(s.mono(i));
        long count = 0;
        std::string bad;
        for (const auto& u : monos)
            for (const auto& v : monos) {
                if (static_cast<int>(u.size() + v.size()) > D) continue;
                ++count;
                if (!shuffle_check(s, u, v) && bad.empty()) bad = "fails for u=" + mono_name(u) + ", v=" + mono_name(v);
            }
        out.add("shuffle relations" + tag, bad.empty(), bad.empty() ? str(count) + " pairs" : bad);
        out.add("log E(g) is a Lie series" + tag, log_lie_check(s));
        out.add("log E0(g) is a Lie series" + tag, log_lie_check(embed_E0(g, D)));

        for (int r = 1; r <= D; ++r) {
            LevelFamily b = beta_measures(g, r, ctx);
            auto rep = validate_distribution(b);
            out.add("beta_" + str(r) + " is a measure" + tag, rep.pass, rep.pass ? "" : rep.describe());
            long worst = kInfinity;
            for (int n = 0; n <= nmax; ++n)
                for (const auto& v : b.table(n)) worst = std::min(worst, vp(v, p));
            out.add("beta_" + str(r) + " values lie in (1/r!) Z_p" + tag, worst >= -vp_factorial(r, p), "min valuation " + vp_str(worst));
        }

        const FreeWord& h = words[(wi + 1) % nwords];
        GradedSequence lhs = beta_sequence(g * h, 2, ctx);
        GradedSequence rhs = star_convolution(beta_sequence(g, 2, ctx), beta_sequence(h, 2, ctx));
        bool star = true;
        for (int r = 0; r <= 2; ++r) star = star && lhs.entries[r] == rhs.entries[r];
        out.add("beta(gh) = beta(g) * beta(h) through degree 2, h = " + h.str() + tag, star);

        {
            LevelFamily b1 = beta_measures(g, 1, ctx);
            LevelFamily b2 = beta_measures(g, 2, ctx);
            long N = ctx.pow(1);
            bool ok = true;
            for (long a = 0; a < N; ++a)
                for (long c = 0; c < N; ++c)
                    ok = ok && b2.value(1, {a, c}) + b2.value(1, {c, a}) == b1.value(1, {a}) * b1.value(1, {c});
            out.add("symmetrised beta_2 equals alpha_a alpha_b at level 1" + tag, ok);
        }

        {
            std::string fail;
            long checked = 0;
            for (int n = 0; n + 1 <= nmax; ++n) {
                long N = ctx.pow(n);
                for (const auto& sh : shapes_upto(2, 2))
                    for (long i = 0; i < N; ++i) {
                        WordShape ws{sh, {i}};
                        auto rep = thm31_congruence(g, ws, n, 1, ctx);
                        ++checked;
                        if (!rep.pass && fail.empty())
                            fail = "n=" + str(n) + " shape " + shape_str(sh) + " i=" + str(i) + ": achieved " + vp_str(rep.achieved) +
                                   " < " + str(rep.guarantee);
                    }
            }
            out.add("coefficients match box integrals, n_0+n_1 <= 2, m = 1" + tag, fail.empty(),
                    fail.empty() ? str(checked) + " boxes" : fail);
        }

        bool commute = true;
        for (int n = 0; n < nmax; ++n) commute = commute && embed_E(project_pr(g, n), D).coeffs() == project_pr(embed_E(g, D), n).coeffs();
        out.add("projection commutes with the embedding" + tag, commute);

        for (int r = 1; r <= 2; ++r) out.append(prop72_roundtrip(g, r, 3, ctx));
    }

    NcSeries bad = NcSeries::one(p, nmax, D);
    bad[bad.index({1, 2})] = 1;
    Mono a{1}, b{2};
    bool caught = !shuffle_check(bad, a, b) && !log_lie_check(bad);
    out.add("1 + Y0 Y1 is rejected as group-like" + cfg, caught);
    return out;
}

// ---------------------------------------------------------------- corrections

MPoly change_of_variable_integrand(const std::vector<int>& shape, const std::vector<Q>& a, long N, const Q& off0, const Q& offr) {
    int r = static_cast<int>(a.size());
    Q inv(1, N);
    auto x = [&](int k) { return MPoly::var(r, k); };
    auto cst = [&](const Q& v) { return MPoly::constant(r, v); };
    MPoly poly = ((cst(a[0]) - x(0)) * inv + cst(off0)).pow(shape[0]);
    for (int k = 0; k + 1 < r; ++k) poly = poly * ((x(k) - x(k + 1) - cst(a[k]) + cst(a[k + 1])) * inv).pow(shape[k + 1]);
    return poly * ((x(r - 1) - cst(a[r - 1])) * inv + cst(offr)).pow(shape[r]);
}

CheckList check_change_of_variables(std::uint64_t seed, long p, bool tamper) {
    CheckList out;
    Rng rng(seed ^ 0x1010ULL);
    const int r = 2, n = 1;
    long N = p;
    auto shapes = shapes_upto(r + 1, 2);
    auto integrate = [&](const DiracCombination& mu, const std::vector<Q>& a, const std::vector<int>& sh, const Q& o0,
                         const Q& orr) {
        Point base(r);
        for (int k = 0; k < r; ++k) base[k] = mod(Z(a[k].get_num() / a[k].get_den()).get_si(), N);
        return box_integral(mu, p, base, n, change_of_variable_integrand(sh, a, N, o0, orr)).value;
    };
    for (int trial = 0; trial < 10; ++trial) {
        DiracCombination beta = rand_dirac(rng, r, 4, 40);
        DiracCombination neg = beta.pushforward_affine({-1, -1}, {0, 0});
        DiracCombination one_minus = beta.pushforward_affine({-1, -1}, {1, 1});
        DiracCombination minus_one = beta.pushforward_affine({1, 1}, {1, 1});
        if (tamper && trial == 0) neg.atoms.front().second += 1;
        std::string bad[3];
        long count = 0;
        for (const auto& sh : shapes) {
            int m = 0;
            for (int v : sh) m += v;
            Q sign = m % 2 ? Q(-1) : Q(1);
            for_each_point(r, N, [&](const Point& ip) {
                std::vector<Q> i(r);
                for (int k = 0; k < r; ++k) i[k] = Q(ip[k]);
                ++count;
                Q lhs_a = integrate(neg, i, sh, 0, 0);
                Q lhs_b = integrate(one_minus, i, sh, 0, 0);
                Q lhs_c = integrate(minus_one, i, sh, 0, 0);
                std::vector<Q> ia(r), ib(r), ic(r);
                for (int k = 0; k < r; ++k) {
                    ia[k] = N - i[k];
                    ib[k] = N + 1 - i[k];
                    ic[k] = i[k] - 1;
                }
                Q rhs_a = sign * integrate(beta, ia, sh, -1, 1);
                Q rhs_b = sign * integrate(beta, ib, sh, -1, 1);
                Q rhs_c = integrate(beta, ic, sh, 0, 0);
                std::string where = "shape " + shape_str(sh) + " i=" + point_str(ip);
                if (lhs_a != rhs_a && bad[0].empty()) bad[0] = where + ": " + to_string(lhs_a) + " vs " + to_string(rhs_a);
                if (lhs_b != rhs_b && bad[1].empty()) bad[1] = where + ": " + to_string(lhs_b) + " vs " + to_string(rhs_b);
                if (lhs_c != rhs_c && bad[2].empty()) bad[2] = where + ": " + to_string(lhs_c) + " vs " + to_string(rhs_c);
            });
        }
        const char* names[3] = {"y = -x", "y = 1 - x", "y = x - 1"};
        for (int k = 0; k < 3; ++k)
            out.add(std::string("change of variables ") + names[k] + ", measure " + str(trial) + " (p=" + str(p) + ")", bad[k].empty(),
                    bad[k].empty() ? str(count) + " boxes" : bad[k]);
    }
    for (int trial = 0; trial < 5; ++trial) {
        DiracCombination beta = even_part(rand_dirac(rng, r, 3, 40));
        std::string bad;
        for (const auto& sh : shapes) {
            int m = 0;
            for (int v : sh) m += v;
            Q sign = m % 2 ? Q(-1) : Q(1);
            for_each_point(r, N, [&](const Point& ip) {
                std::vector<Q> i(r), ia(r), ib(r), ic(r);
                for (int k = 0; k < r; ++k) {
                    i[k] = ip[k];
                    ia[k] = N - i[k];
                    ib[k] = N + 1 - i[k];
                    ic[k] = i[k] - 1;
                }
                Q total = integrate(beta, i, sh, 0, 0) - sign * integrate(beta, ia, sh, -1, 1) +
                          sign * integrate(beta, ib, sh, -1, 1) - integrate(beta, ic, sh, 0, 0);
                if (total != 0 && bad.empty()) bad = "shape " + shape_str(sh) + " i=" + point_str(ip) + ": sum " + to_string(total);
            });
        }
        out.add("four-term sum vanishes for even measure " + str(trial) + " (p=" + str(p) + ")", bad.empty(), bad);
    }
    return out;
}

CheckList check_prop86(std::uint64_t seed) {
    CheckList out;
    Rng rng(seed ^ 0x8686ULL);
    const long p = 3;
    PrimeContext ctx(p, 2);
    for (int trial = 0; trial < 3; ++trial) {
        FreeWord g = rand_kernel_word(rng, p, 2, 4);
        Q c = rand_unit(rng, p);
        while (!is_integral(c, p)) c = rand_unit(rng, p);
        LevelFamily h = prop86_defect(beta_measures(g, 2, ctx), c);
        auto rep = validate_distribution(h);
        out.add("h_2 is a measure for " + g.str() + ", c=" + to_string(c), rep.pass, rep.pass ? "" : rep.describe());
        LevelFamily even = even_part(rand_dirac(rng, 2, 3, 20)).to_family(ctx, 2);
        out.add("h_2 vanishes on an even measure, c=" + to_string(c), prop86_defect(even, c) == LevelFamily(ctx, 2, 2));
    }
    return out;
}

CheckList check_display_corrections(std::uint64_t seed, bool tamper) {
    CheckList out;
    Rng rng(seed ^ 0x3232ULL);
    const long p = 3;
    const int n = 1, m = 5;
    PrimeContext ctx(p, n + m);
    for (int trial = 0; trial < 2; ++trial) {
        Q c = rand_unit(rng, p);
        while (!is_integral(c, p) || c == 1) c = rand_unit(rng, p);
        LevelFamily nu = even_part(rand_dirac(rng, 1, 3, 30)).to_family(ctx, n + m);
        LevelFamily beta1 = reflection_solution(nu, c);
        if (tamper && trial == 0) beta1 = beta1.perturbed(n + m, {1}, Q(1));
        std::string tag = " (p=3, n=1, m=5, c=" + to_string(c) + ")";
        std::string bad;
        bool printed_fails = false;
        for (int mu = 1; mu <= 3; ++mu)
            for (long i = 1; i < ctx.pow(n); ++i) {
                auto cor = thm32_defect(beta1, c, mu, i, n, m, Variant::Corrected);
                auto pr = thm32_defect(beta1, c, mu, i, n, m, Variant::Printed);
                long got = vp(cor.defect, p);
                if (got < cor.guarantee && bad.empty())
                    bad = "mu=" + str(mu) + " i=" + str(i) + ": defect valuation " + vp_str(got) + " < " + str(cor.guarantee);
                if (vp(pr.defect, p) < pr.guarantee) printed_fails = true;
            }
        out.add("inversion formula with corrected sign" + tag, bad.empty(), bad);
        out.add("inversion formula as printed is violated" + tag, printed_fails);
        std::string bad33;
        bool printed33_fails = false;
        bool special = true;
        for (long i = 1; i < ctx.pow(n); ++i) {
            auto cor = cor33_defect(beta1, c, i, n, m, Variant::Corrected);
            long got = vp(cor.defect, p);
            if (got < cor.guarantee && bad33.empty()) bad33 = "i=" + str(i) + ": valuation " + vp_str(got);
            if (vp(cor33_defect(beta1, c, i, n, m, Variant::Printed).defect, p) < cor.guarantee) printed33_fails = true;
            special = special && cor.defect == thm32_defect(beta1, c, 1, i, n, m, Variant::Corrected).defect;
        }
        out.add("mu = 1 case with -lambda_i and <c^-1(p^n - i)>" + tag, bad33.empty(), bad33);
        out.add("mu = 1 case as printed is violated" + tag, printed33_fails);
        out.add("mu = 1 case agrees with the general formula" + tag, special);
    }
    out.append(check_display_errata({OctagonConfig{3, 1, 2}, OctagonConfig{2, 2, 3}, OctagonConfig{5, 1, 4}}));
    return out;
}

// ---------------------------------------------------------------- suites

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"octagon", "measures", "magnus", "transforms", "corrections", "all"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw UnknownSuite("unknown suite '" + name + "'");
    SuiteReport rep;
    rep.suite = name;
    rep.seed = opt.seed;
    bool all = name == "all";
    if (name == "measures" || all) {
        long p = opt.p.value_or(3);
        int nmax = opt.nmax.value_or(3);
        rep.checks.append(check_padic_laws(opt.seed));
        rep.checks.append(check_distributions(p, nmax, opt.tamper));
        rep.checks.append(check_reflection_relations(opt.seed, false, opt.mod_exp.value_or(3)));
    }
    if (name == "transforms" || all) {
        rep.checks.append(check_iwasawa_M(opt.tamper));
        rep.checks.append(check_e1_moments(false));
        rep.checks.append(check_transform_laws(opt.seed));
        rep.checks.append(check_group_sum(opt.seed, false));
    }
    if (name == "magnus" || all) {
        int D = opt.degree.value_or(3);
        if (opt.p) {
            rep.checks.append(check_magnus(opt.seed, *opt.p, opt.nmax.value_or(1), D, 10, opt.tamper));
        } else {
            rep.checks.append(check_magnus(opt.seed, 2, 2, D, 10, opt.tamper));
            rep.checks.append(check_magnus(opt.seed, 3, 1, D, 10, false));
        }
    }
    if (name == "octagon" || all) {
        std::vector<OctagonConfig> cfgs = opt.p ? octagon_configs(*opt.p, opt.n.value_or(1), opt.s) : octagon_grid();
        rep.checks.append(check_octagon(cfgs, opt.tamper, &rep.documents));
        rep.checks.append(check_derive_factors(cfgs, "EG"));
        rep.checks.append(check_display_errata(cfgs));
        rep.checks.append(check_prop86(opt.seed));
    }
    if (name == "corrections" || all) {
        rep.checks.append(check_change_of_variables(opt.seed, opt.p.value_or(3), opt.tamper));
        rep.checks.append(check_display_corrections(opt.seed, false));
    }
    return rep;
}

std::string report_json(const SuiteReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    long failed = 0;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& l : r.checks.lines) {
        if (!l.pass) ++failed;
        arr.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    }
    j["passed"] = static_cast<long>(r.checks.lines.size()) - failed;
    j["failed"] = failed;
    const CheckLine* f = r.checks.first_failure();
    j["first_failure"] = f ? nlohmann::ordered_json{{"name", f->name}, {"detail", f->detail}} : nlohmann::ordered_json(nullptr);
    j["checks"] = arr;
    if (!r.documents.empty()) {
        auto docs = nlohmann::ordered_json::array();
        for (const auto& d : r.documents) docs.push_back(nlohmann::ordered_json::parse(d));
        j["reports"] = docs;
    }
    return j.dump(2) + "\n";
}

std::string report_text(const SuiteReport& r) {
    std::ostringstream os;
    os << "suite " << r.suite << " seed " << r.seed << "\n";
    long failed = 0;
    for (const auto& l : r.checks.lines) {
        if (!l.pass) ++failed;
        os << (l.pass ? "PASS " : "FAIL ") << l.name;
        if (!l.detail.empty()) os << " -- " << l.detail;
        os << "\n";
    }
    os << (r.checks.lines.size() - failed) << " passed, " << failed << " failed\n";
    if (const CheckLine* f = r.checks.first_failure()) os << "first failure: " << f->name << (f->detail.empty() ? "" : " -- " + f->detail) << "\n";
    return os.str();
}

std::string report_csv(const SuiteReport& r) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::ostringstream os;
    os << "suite,seed,name,pass,detail\n";
    for (const auto& l : r.checks.lines)
        os << r.suite << "," << r.seed << "," << quote(l.name) << "," << (l.pass ? 1 : 0) << "," << quote(l.detail) << "\n";
    return os.str();
}

}  // namespace pam
