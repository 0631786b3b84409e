#include "pam/measure.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace pam {

LevelFamily::LevelFamily(const PrimeContext& ctx, int dim, int n_max) : ctx_(ctx), dim_(dim), n_max_(n_max) {
    if (dim < 0) throw PadicError("negative dimension");
    if (n_max < 0) throw PadicError("negative n_max");
    for (int n = 0; n <= n_max; ++n) {
        size_t sz = 1;
        for (int k = 0; k < dim; ++k) sz *= static_cast<size_t>(ctx.pow(n));
        tables_.emplace_back(sz, Q(0));
    }
}

LevelFamily LevelFamily::tabulate(const PrimeContext& ctx, int dim, int n_max, const LevelFn& fn) {
    LevelFamily mu(ctx, dim, n_max);
    for (int n = 0; n <= n_max; ++n)
        for (size_t i = 0; i < mu.tables_[n].size(); ++i) mu.tables_[n][i] = fn(n, mu.decode(n, i));
    mu.refresh_denom_bound();
    return mu;
}

void LevelFamily::refresh_denom_bound() {
    long d = 0;
    for (const auto& t : tables_)
        for (const auto& v : t)
            if (v != 0) d = std::max(d, -vp(v, ctx_.p));
    denom_bound_ = d;
}

Point LevelFamily::decode(int n, size_t idx) const {
    long m = ctx_.pow(n);
    Point a(dim_);
    for (int k = 0; k < dim_; ++k) {
        a[k] = static_cast<long>(idx % static_cast<size_t>(m));
        idx /= static_cast<size_t>(m);
    }
    return a;
}

size_t LevelFamily::encode(int n, const Point& a) const {
    if (static_cast<int>(a.size()) != dim_) throw PadicError("point dimension mismatch");
    long m = ctx_.pow(n);
    size_t idx = 0;
    for (int k = dim_ - 1; k >= 0; --k) idx = idx * static_cast<size_t>(m) + static_cast<size_t>(mod(a[k], m));
    return idx;
}

LevelFamily LevelFamily::perturbed(int n, const Point& a, const Q& delta) const {
    LevelFamily r = *this;
    r.tables_.at(n).at(encode(n, a)) += delta;
    r.refresh_denom_bound();
    return r;
}

bool LevelFamily::operator==(const LevelFamily& o) const {
    return ctx_ == o.ctx_ && dim_ == o.dim_ && n_max_ == o.n_max_ && tables_ == o.tables_;
}

std::string DistributionReport::describe() const {
    if (pass) return "distribution relation holds";
    std::ostringstream os;
    os << "distribution relation fails between levels " << n << " and " << n + 1 << " at a = (";
    for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << "), defect " << to_string(defect);
    return os.str();
}

DistributionReport validate_distribution(const LevelFamily& mu) {
    DistributionReport rep;
    for (int n = 0; n < mu.n_max(); ++n) {
        std::vector<Q> sums(mu.size(n), Q(0));
        for (size_t i = 0; i < mu.size(n + 1); ++i) sums[mu.encode(n, mu.decode(n + 1, i))] += mu.at(n + 1, i);
        for (size_t i = 0; i < sums.size(); ++i) {
            if (sums[i] != mu.at(n, i)) {
                rep.pass = false;
                rep.n = n;
                rep.a = mu.decode(n, i);
                rep.defect = sums[i] - mu.at(n, i);
                return rep;
            }
        }
    }
    return rep;
}

LevelFamily linear_combine(const std::vector<Q>& coeffs, const std::vector<LevelFamily>& mus) {
    if (coeffs.size() != mus.size() || mus.empty()) throw PadicError("linear_combine: size mismatch");
    int dim = mus[0].dim();
    int n_max = mus[0].n_max();
    for (const auto& m : mus) {
        if (m.dim() != dim) throw PadicError("linear_combine: dimension mismatch");
        if (m.ctx() != mus[0].ctx()) throw PadicError("linear_combine: context mismatch");
        n_max = std::min(n_max, m.n_max());
    }
    return LevelFamily::tabulate(mus[0].ctx(), dim, n_max, [&](int n, const Point& a) -> Q {
        Q s = 0;
        for (size_t k = 0; k < mus.size(); ++k)
            if (coeffs[k] != 0) s += coeffs[k] * mus[k].value(n, a);
        return s;
    });
}

LevelFamily operator+(const LevelFamily& a, const LevelFamily& b) { return linear_combine({1, 1}, {a, b}); }
LevelFamily operator-(const LevelFamily& a, const LevelFamily& b) { return linear_combine({1, -1}, {a, b}); }
LevelFamily operator*(const Q& c, const LevelFamily& a) { return linear_combine({c}, {a}); }

LevelFamily translate(const LevelFamily& mu, const std::vector<Q>& c) {
    if (static_cast<int>(c.size()) != mu.dim()) throw PadicError("translate: shift dimension mismatch");
    long p = mu.ctx().p;
    for (const auto& ci : c)
        if (!is_integral(ci, p)) throw PadicError("translate: shift " + to_string(ci) + " is not p-integral");
    return LevelFamily::tabulate(mu.ctx(), mu.dim(), mu.n_max(), [&](int n, const Point& a) -> Q {
        Point b = a;
        for (size_t k = 0; k < a.size(); ++k) b[k] = a[k] - repr_mod(c[k], p, n);
        return mu.value(n, b);
    });
}

LevelFamily scale_action(const LevelFamily& mu, const Q& d) {
    long p = mu.ctx().p;
    if (!is_unit(d, p)) throw PadicError("scale_action: " + to_string(d) + " is not a p-adic unit");
    Q dinv = 1 / d;
    return LevelFamily::tabulate(mu.ctx(), mu.dim(), mu.n_max(), [&](int n, const Point& a) -> Q {
        long m = mu.modulus(n);
        long r = repr_mod(dinv, p, n);
        Point b = a;
        for (auto& x : b) x = static_cast<long>((static_cast<__int128>(r) * x) % m);
        return mu.value(n, b);
    });
}

LevelFamily pushforward_affine(const LevelFamily& mu, const std::vector<int>& eps, const std::vector<Q>& shift) {
    if (static_cast<int>(eps.size()) != mu.dim() || static_cast<int>(shift.size()) != mu.dim())
        throw PadicError("pushforward_affine: dimension mismatch");
    long p = mu.ctx().p;
    for (const auto& c : shift)
        if (!is_integral(c, p)) throw PadicError("pushforward_affine: shift " + to_string(c) + " is not p-integral");
    return LevelFamily::tabulate(mu.ctx(), mu.dim(), mu.n_max(), [&](int n, const Point& b) -> Q {
        Point a = b;
        for (size_t k = 0; k < b.size(); ++k) a[k] = eps[k] * (b[k] - repr_mod(shift[k], p, n));
        return mu.value(n, a);
    });
}

LevelFamily signed_perm_action(const LevelFamily& mu, const std::vector<int>& perm, const std::vector<int>& eps) {
    int m = mu.dim();
    if (static_cast<int>(perm.size()) != m || static_cast<int>(eps.size()) != m)
        throw PadicError("signed_perm_action: dimension mismatch");
    int sign = 1;
    for (int e : eps) sign *= e;
    return LevelFamily::tabulate(mu.ctx(), m, mu.n_max(), [&](int n, const Point& b) -> Q {
        Point a(m);
        for (int i = 0; i < m; ++i) a[i] = eps[i] * b[perm[i]];
        return Q(sign) * mu.value(n, a);
    });
}

LevelFamily exterior_product(const LevelFamily& a, const LevelFamily& b) {
    if (a.ctx() != b.ctx()) throw PadicError("exterior_product: context mismatch");
    int da = a.dim();
    return LevelFamily::tabulate(a.ctx(), da + b.dim(), std::min(a.n_max(), b.n_max()), [&](int n, const Point& x) -> Q {
        Point xa(x.begin(), x.begin() + da);
        Point xb(x.begin() + da, x.end());
        return a.value(n, xa) * b.value(n, xb);
    });
}

LevelFamily swap_coordinates(const LevelFamily& mu) {
    if (mu.dim() != 2) throw PadicError("swap_coordinates needs dimension 2");
    return LevelFamily::tabulate(mu.ctx(), 2, mu.n_max(), [&](int n, const Point& a) -> Q { return mu.value(n, {a[1], a[0]}); });
}

std::optional<std::pair<int, Point>> first_difference(const LevelFamily& mu, const LevelFamily& nu, int n, long e) {
    if (mu.dim() != nu.dim()) throw PadicError("measures_equal: dimension mismatch");
    long p = mu.ctx().p;
    int top = std::min({n, mu.n_max(), nu.n_max()});
    for (int k = 0; k <= top; ++k)
        for (size_t i = 0; i < mu.size(k); ++i) {
            Q d = mu.at(k, i) - nu.at(k, i);
            if (d != 0 && vp(d, p) < e) return std::make_pair(k, mu.decode(k, i));
        }
    return std::nullopt;
}

bool measures_equal(const LevelFamily& mu, const LevelFamily& nu, int n, long e) {
    return !first_difference(mu, nu, n, e).has_value();
}

GradedSequence unit_sequence(const PrimeContext& ctx, int n_max, int degree) {
    GradedSequence g;
    for (int i = 0; i <= degree; ++i) {
        if (i == 0)
            g.entries.push_back(LevelFamily::tabulate(ctx, 0, n_max, [](int, const Point&) -> Q { return Q(1); }));
        else
            g.entries.emplace_back(ctx, i, n_max);
    }
    return g;
}

GradedSequence star_convolution(const GradedSequence& a, const GradedSequence& b) {
    int deg = std::min(a.degree(), b.degree());
    GradedSequence c;
    for (int i = 0; i <= deg; ++i) {
        std::vector<LevelFamily> parts;
        for (int j = 0; j <= i; ++j) parts.push_back(exterior_product(a.entries.at(j), b.entries.at(i - j)));
        c.entries.push_back(linear_combine(std::vector<Q>(parts.size(), Q(1)), parts));
    }
    return c;
}

BoxValue box_integral(const LevelFamily& mu, const Point& base, int n, const MPoly& poly, int eval_level) {
    int r = mu.dim();
    long p = mu.ctx().p;
    long pn = mu.ctx().pow(n);
    if (static_cast<int>(base.size()) != r) throw PadicError("box_integral: base dimension mismatch");
    for (long b : base)
        if (b < 0 || b >= pn) throw PadicError("box_integral: base outside [0, p^n)");
    if (eval_level < n || eval_level > mu.n_max()) throw PadicError("box_integral: evaluation level out of range");
    int m = eval_level - n;
    long pm = mu.ctx().pow(m);
    size_t count = 1;
    for (int k = 0; k < r; ++k) count *= static_cast<size_t>(pm);
    Q value = 0;
    Point a(r);
    for (size_t idx = 0; idx < count; ++idx) {
        size_t t = idx;
        for (int k = 0; k < r; ++k) {
            a[k] = base[k] + pn * static_cast<long>(t % static_cast<size_t>(pm));
            t /= static_cast<size_t>(pm);
        }
        const Q& w = mu.value(eval_level, a);
        if (w != 0) value += poly.eval(a) * w;
    }
    std::vector<Q> qb(base.begin(), base.end());
    long cv = poly.rescaled(qb, Q(pn)).min_vp(p);
    long e = m - mu.denom_bound() + std::min(0L, cv == kInfinity ? 0L : cv);
    return {value, e};
}

LevelFamily DiracCombination::to_family(const PrimeContext& ctx, int n_max) const {
    return LevelFamily::tabulate(ctx, dim, n_max, [&](int n, const Point& a) -> Q {
        Q s = 0;
        long m = ctx.pow(n);
        for (const auto& [pt, w] : atoms) {
            bool hit = true;
            for (int k = 0; k < dim; ++k)
                if (mod(pt[k] - a[k], m) != 0) hit = false;
            if (hit) s += w;
        }
        return s;
    });
}

DiracCombination DiracCombination::pushforward_affine(const std::vector<int>& eps, const std::vector<long>& shift) const {
    DiracCombination r;
    r.dim = dim;
    for (const auto& [pt, w] : atoms) {
        Point q(dim);
        for (int k = 0; k < dim; ++k) q[k] = eps[k] * pt[k] + shift[k];
        r.atoms.emplace_back(q, w);
    }
    return r;
}

DiracCombination DiracCombination::operator+(const DiracCombination& o) const {
    DiracCombination r = *this;
    r.atoms.insert(r.atoms.end(), o.atoms.begin(), o.atoms.end());
    return r;
}

BoxValue box_integral(const DiracCombination& mu, long p, const Point& base, int n, const MPoly& poly) {
    long m = 1;
    for (int i = 0; i < n; ++i) m *= p;
    Q s = 0;
    for (const auto& [pt, w] : mu.atoms) {
        bool hit = true;
        for (int k = 0; k < mu.dim; ++k)
            if (mod(pt[k] - base[k], m) != 0) hit = false;
        if (hit) s += w * poly.eval(pt);
    }
    return {s, kInfinity};
}

IwasawaPoly::IwasawaPoly(int dim_, int terms_, long p_) : dim(dim_), terms(terms_), p(p_) {
    size_t sz = 1;
    for (int k = 0; k < dim; ++k) sz *= static_cast<size_t>(terms);
    coeffs.assign(sz, Q(0));
    guarantee.assign(sz, kInfinity);
}

size_t IwasawaPoly::index(const std::vector<int>& j) const {
    size_t idx = 0;
    for (int k = dim - 1; k >= 0; --k) idx = idx * static_cast<size_t>(terms) + static_cast<size_t>(j.at(k));
    return idx;
}

std::vector<int> IwasawaPoly::exponent(size_t idx) const {
    std::vector<int> j(dim);
    for (int k = 0; k < dim; ++k) {
        j[k] = static_cast<int>(idx % static_cast<size_t>(terms));
        idx /= static_cast<size_t>(terms);
    }
    return j;
}

namespace {

// Shared driver: coefficient j is sum_a prod_k w[a_k][j_k] mu(a).
IwasawaPoly moment_table(const LevelFamily& mu, int terms, int level, const std::vector<std::vector<Q>>& w,
                         bool divide_factorials) {
    if (level < 0 || level > mu.n_max()) throw PadicError("transform: level out of range");
    if (terms < 0) throw PadicError("transform: negative term count");
    long p = mu.ctx().p;
    IwasawaPoly P(mu.dim(), terms, p);
    for (size_t i = 0; i < mu.size(level); ++i) {
        const Q& v = mu.at(level, i);
        if (v == 0) continue;
        Point a = mu.decode(level, i);
        for (size_t c = 0; c < P.size(); ++c) {
            auto j = P.exponent(c);
            Q prod = v;
            for (int k = 0; k < P.dim && prod != 0; ++k) prod *= w[a[k]][j[k]];
            P.coeffs[c] += prod;
        }
    }
    for (size_t c = 0; c < P.size(); ++c) {
        auto j = P.exponent(c);
        long loss = 0;
        Q fact = 1;
        for (int jk : j) {
            loss += vp_factorial(jk, p);
            fact *= Q(factorial(jk));
        }
        if (divide_factorials) P.coeffs[c] /= fact;
        P.guarantee[c] = level - mu.denom_bound() - loss;
    }
    return P;
}

}  // namespace

IwasawaPoly iwasawa_P(const LevelFamily& mu, int terms, int level) {
    long pn = mu.ctx().pow(level);
    std::vector<std::vector<Q>> w(pn, std::vector<Q>(terms));
    for (long a = 0; a < pn; ++a)
        for (int j = 0; j < terms; ++j) w[a][j] = binom(Q(a), j);
    return moment_table(mu, terms, level, w, false);
}

IwasawaPoly transform_F(const LevelFamily& mu, int terms, int level) {
    long pn = mu.ctx().pow(level);
    std::vector<std::vector<Q>> w(pn, std::vector<Q>(terms));
    for (long a = 0; a < pn; ++a)
        for (int j = 0; j < terms; ++j) w[a][j] = qpow(Q(a), j);
    return moment_table(mu, terms, level, w, true);
}

namespace {

std::vector<std::vector<Q>> powers_of_series(const std::vector<Q>& g, int terms) {
    std::vector<std::vector<Q>> pw(terms, std::vector<Q>(terms, Q(0)));
    if (terms == 0) return pw;
    pw[0][0] = 1;
    for (int j = 1; j < terms; ++j)
        for (int a = 0; a < terms; ++a)
            for (int b = 0; a + b < terms; ++b)
                if (b < static_cast<int>(g.size())) pw[j][a + b] += pw[j - 1][a] * g[b];
    return pw;
}

// Apply a linear map along variable k: new_i = sum_j M[j][i] old_j.
IwasawaPoly along_variable(const IwasawaPoly& P, int k, const std::vector<std::vector<Q>>& M,
                           const std::function<long(long, int, int)>& guar) {
    IwasawaPoly R(P.dim, P.terms, P.p);
    for (size_t c = 0; c < R.size(); ++c) {
        auto i = R.exponent(c);
        long g = kInfinity;
        Q s = 0;
        auto j = i;
        for (int jk = 0; jk <= i[k]; ++jk) {
            j[k] = jk;
            size_t src = P.index(j);
            if (M[jk][i[k]] != 0) s += M[jk][i[k]] * P.coeffs[src];
            g = std::min(g, guar(P.guarantee[src], jk, i[k]));
        }
        R.coeffs[c] = s;
        R.guarantee[c] = g;
    }
    return R;
}

}  // namespace

IwasawaPoly transform_F_from_P(const IwasawaPoly& P) {
    std::vector<Q> g(P.terms, Q(0));
    for (int i = 1; i < P.terms; ++i) g[i] = Q(1) / Q(factorial(i));
    auto M = powers_of_series(g, P.terms);
    long p = P.p;
    IwasawaPoly R = P;
    for (int k = 0; k < P.dim; ++k)
        R = along_variable(R, k, M, [p](long e, int j, int i) {
            if (e == kInfinity) return kInfinity;
            return e + vp_factorial(j, p) - vp_factorial(i, p);
        });
    return R;
}

IwasawaPoly substitute_variables(const IwasawaPoly& P, const std::vector<std::vector<Q>>& subs) {
    if (static_cast<int>(subs.size()) != P.dim) throw PadicError("substitute_variables: dimension mismatch");
    IwasawaPoly R = P;
    for (int k = 0; k < P.dim; ++k) {
        if (!subs[k].empty() && subs[k][0] != 0) throw PadicError("substitute_variables: nonzero constant term");
        for (const auto& c : subs[k])
            if (!is_integral(c, P.p)) throw PadicError("substitute_variables: series is not p-integral");
        auto M = powers_of_series(subs[k], P.terms);
        R = along_variable(R, k, M, [](long e, int, int) { return e; });
    }
    return R;
}

IwasawaPoly multiply_univariate(const IwasawaPoly& P, const std::vector<std::vector<Q>>& factors) {
    if (static_cast<int>(factors.size()) != P.dim) throw PadicError("multiply_univariate: dimension mismatch");
    IwasawaPoly R = P;
    for (int k = 0; k < P.dim; ++k) {
        for (const auto& c : factors[k])
            if (!is_integral(c, P.p)) throw PadicError("multiply_univariate: factor is not p-integral");
        std::vector<std::vector<Q>> M(P.terms, std::vector<Q>(P.terms, Q(0)));
        for (int j = 0; j < P.terms; ++j)
            for (int i = j; i < P.terms; ++i)
                if (i - j < static_cast<int>(factors[k].size())) M[j][i] = factors[k][i - j];
        R = along_variable(R, k, M, [](long e, int, int) { return e; });
    }
    return R;
}

IwasawaPoly permute_variables(const IwasawaPoly& P, const std::vector<int>& perm) {
    IwasawaPoly R(P.dim, P.terms, P.p);
    for (size_t c = 0; c < P.size(); ++c) {
        auto j = P.exponent(c);
        std::vector<int> t(P.dim);
        for (int i = 0; i < P.dim; ++i) t[perm[i]] = j[i];
        size_t d = R.index(t);
        R.coeffs[d] = P.coeffs[c];
        R.guarantee[d] = P.guarantee[c];
    }
    return R;
}

std::vector<Q> binomial_series(const Q& c, int terms) {
    std::vector<Q> r(terms);
    for (int j = 0; j < terms; ++j) r[j] = binom(c, j);
    return r;
}

std::string level_table_csv(const LevelFamily& mu) {
    std::ostringstream os;
    os << "n";
    for (int k = 1; k <= mu.dim(); ++k) os << ",a_" << k;
    os << ",value\n";
    for (int n = 0; n <= mu.n_max(); ++n)
        for (size_t i = 0; i < mu.size(n); ++i) {
            os << n;
            for (long x : mu.decode(n, i)) os << "," << x;
            os << "," << to_string(mu.at(n, i)) << "\n";
        }
    return os.str();
}

std::string iwasawa_json(const IwasawaPoly& P) {
    nlohmann::ordered_json j;
    j["dim"] = P.dim;
    j["terms"] = P.terms;
    auto arr = nlohmann::ordered_json::array();
    for (size_t c = 0; c < P.size(); ++c) {
        nlohmann::ordered_json e;
        e["exp"] = P.exponent(c);
        e["value"] = to_string(P.coeffs[c]);
        if (P.guarantee[c] == kInfinity)
            e["guarantee"] = "exact";
        else
            e["guarantee"] = P.guarantee[c];
        arr.push_back(e);
    }
    j["coeffs"] = arr;
    return j.dump(2);
}

}  // namespace pam
