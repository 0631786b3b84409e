#include "pam/octagon.hpp"

#include "pam/magnus.hpp"
#include "pam/measure.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pam {

std::string SymTable::name(int id) const {
    if (id == 0) return "t";
    long k = id - 1;
    if (k < N_) return "a_" + std::to_string(k);
    k -= N_;
    if (k < N_) return "g_" + std::to_string(k);
    k -= N_;
    return "b_{" + std::to_string(k / N_) + "," + std::to_string(k % N_) + "}";
}

SymPoly::SymPoly(const Q& c) {
    if (c != 0) terms_[0] = c;
}

SymPoly SymPoly::symbol(int id) {
    SymPoly r;
    r.terms_[key_of({id})] = 1;
    return r;
}

std::vector<int> SymPoly::symbols_of(Key k) {
    std::vector<int> ids;
    for (int s = 0; s < 4; ++s) {
        Key v = (k >> (16 * s)) & 0xFFFF;
        if (v == 0) break;
        ids.push_back(static_cast<int>(v - 1));
    }
    return ids;
}

SymPoly::Key SymPoly::key_of(std::vector<int> ids) {
    if (ids.size() > 4) throw PadicError("symbolic monomial exceeds four symbols");
    std::sort(ids.begin(), ids.end());
    Key k = 0;
    for (size_t s = 0; s < ids.size(); ++s) {
        if (ids[s] < 0 || ids[s] >= 0xFFFF) throw PadicError("symbol id out of range");
        k |= static_cast<Key>(ids[s] + 1) << (16 * s);
    }
    return k;
}

void SymPoly::add_term(Key k, const Q& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly r = *this;
    r += o;
    return r;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

SymPoly SymPoly::operator-() const {
    SymPoly r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + (-o); }

SymPoly SymPoly::operator*(const SymPoly& o) const {
    SymPoly r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            Key k;
            if (ka == 0)
                k = kb;
            else if (kb == 0)
                k = ka;
            else {
                auto ids = symbols_of(ka);
                auto more = symbols_of(kb);
                ids.insert(ids.end(), more.begin(), more.end());
                k = key_of(ids);
            }
            r.add_term(k, ca * cb);
        }
    return r;
}

bool SymPoly::contains(int id) const {
    for (const auto& kv : terms_)
        for (int s : symbols_of(kv.first))
            if (s == id) return true;
    return false;
}

SymPoly SymPoly::substituted(int id, const SymPoly& value) const { return substituted(std::map<int, SymPoly>{{id, value}}); }

SymPoly SymPoly::substituted(const std::map<int, SymPoly>& subs) const {
    SymPoly r;
    for (const auto& [k, c] : terms_) {
        std::vector<int> keep;
        SymPoly factor(c);
        for (int s : symbols_of(k)) {
            auto it = subs.find(s);
            if (it == subs.end())
                keep.push_back(s);
            else
                factor = factor * it->second;
        }
        if (!keep.empty()) {
            SymPoly m;
            m.terms_[key_of(keep)] = 1;
            factor = factor * m;
        }
        r += factor;
    }
    return r;
}

Q SymPoly::eval(const std::map<int, Q>& values) const {
    Q r = 0;
    for (const auto& [k, c] : terms_) {
        Q term = c;
        for (int s : symbols_of(k)) term *= values.at(s);
        r += term;
    }
    return r;
}

std::string SymPoly::str(const SymTable& tab) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += to_string(c);
        for (int s : symbols_of(k)) out += "*" + tab.name(s);
    }
    return out;
}

SymSeries::SymSeries(long p, int n) : p_(p), n_(n) {
    N_ = 1;
    for (int i = 0; i < n; ++i) N_ *= p;
    size_t G = static_cast<size_t>(N_ + 1);
    c_.assign(1 + G + G * G, SymPoly());
}

SymSeries SymSeries::one(long p, int n) {
    SymSeries s(p, n);
    s.c_[0] = SymPoly(1);
    return s;
}

SymSeries SymSeries::gen(long p, int n, int g) {
    SymSeries s(p, n);
    s.c_[s.idx(g)] = SymPoly(1);
    return s;
}

SymSeries SymSeries::mono2(long p, int n, int g, int h) {
    SymSeries s(p, n);
    s.c_[s.idx(g, h)] = SymPoly(1);
    return s;
}

std::vector<int> SymSeries::mono(size_t i) const {
    size_t G = static_cast<size_t>(gens());
    if (i == 0) return {};
    if (i <= G) return {static_cast<int>(i - 1)};
    i -= 1 + G;
    return {static_cast<int>(i / G), static_cast<int>(i % G)};
}

SymSeries SymSeries::operator+(const SymSeries& o) const {
    SymSeries r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

SymSeries SymSeries::operator-(const SymSeries& o) const {
    SymSeries r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += -o.c_[i];
    return r;
}

SymSeries SymSeries::operator*(const SymPoly& c) const {
    SymSeries r = *this;
    for (auto& v : r.c_) v = v * c;
    return r;
}

SymSeries SymSeries::operator*(const SymSeries& o) const {
    if (N_ != o.N_) throw PadicError("multiplying series of different levels");
    SymSeries r(p_, n_);
    int G = gens();
    const SymPoly& a0 = c_[0];
    const SymPoly& b0 = o.c_[0];
    r.c_[0] = a0 * b0;
    for (int g = 0; g < G; ++g) r.c_[idx(g)] = a0 * o.c_[idx(g)] + c_[idx(g)] * b0;
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) {
            size_t k = idx(g, h);
            SymPoly v = a0 * o.c_[k] + c_[k] * b0;
            if (!c_[idx(g)].is_zero() && !o.c_[idx(h)].is_zero()) v += c_[idx(g)] * o.c_[idx(h)];
            r.c_[k] = std::move(v);
        }
    return r;
}

std::string sym_mono_name(const std::vector<int>& m) { return mono_name(m); }

SymSeries series_inverse(const SymSeries& s) {
    if (s[0] != SymPoly(1)) throw PadicError("series_inverse needs constant term 1");
    SymSeries s1(s.p(), s.level()), s2(s.p(), s.level());
    int G = s.gens();
    for (int g = 0; g < G; ++g) s1[s.idx(g)] = s[s.idx(g)];
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h) s2[s.idx(g, h)] = s[s.idx(g, h)];
    return SymSeries::one(s.p(), s.level()) - s1 - s2 + s1 * s1;
}

long OctagonConfig::N() const {
    long r = 1;
    for (int i = 0; i < n; ++i) r *= p;
    return r;
}

void OctagonConfig::validate() const {
    if (!is_prime(p)) throw PadicError("octagon: p = " + std::to_string(p) + " is not prime");
    if (n < 1) throw PadicError("octagon: level must be at least 1");
    long Nv = N();
    if (s < 1 || s >= Nv || s % p == 0)
        throw PadicError("octagon: s = " + std::to_string(s) + " is not a unit in [1, " + std::to_string(Nv) + ")");
}

SymPoly chi_poly(const OctagonConfig& cfg, const SymTable& tab) {
    return SymPoly(Q(cfg.s)) + SymPoly(Q(cfg.N())) * SymPoly::symbol(tab.t());
}

namespace {

long inverse_mod(long s, long N) {
    for (long k = 1; k < N; ++k)
        if ((s * k) % N == 1) return k;
    return 1 % N;
}

}  // namespace

SymPoly e1_sym(const OctagonConfig& cfg, const SymTable& tab, long a) {
    long N = cfg.N();
    a = mod(a, N);
    long r = mod(inverse_mod(cfg.s, N) * a, N);
    SymPoly chi = chi_poly(cfg, tab);
    return SymPoly(frac(a, N)) - chi * SymPoly(frac(r, N)) + (chi - SymPoly(1)) * SymPoly(Q(1, 2));
}

namespace {

struct Builder {
    const OctagonConfig& cfg;
    SymTable tab;
    long N;
    long s;

    explicit Builder(const OctagonConfig& c) : cfg(c), tab(c.N()), N(c.N()), s(c.s) {}

    SymSeries one() const { return SymSeries::one(cfg.p, cfg.n); }
    SymSeries zero() const { return SymSeries(cfg.p, cfg.n); }
    int Yg(long i) const { return static_cast<int>(1 + mod(i, N)); }
    SymSeries X() const { return SymSeries::gen(cfg.p, cfg.n, 0); }
    SymSeries Y(long i) const { return SymSeries::gen(cfg.p, cfg.n, Yg(i)); }
    SymSeries YY(long a, long b) const { return SymSeries::mono2(cfg.p, cfg.n, Yg(a), Yg(b)); }
    SymSeries XY(long i) const { return SymSeries::mono2(cfg.p, cfg.n, 0, Yg(i)); }
    SymSeries YX(long i) const { return SymSeries::mono2(cfg.p, cfg.n, Yg(i), 0); }
    SymSeries XX() const { return SymSeries::mono2(cfg.p, cfg.n, 0, 0); }
    // sum of Y_i for lo <= i <= hi (empty when lo > hi), index N read as 0
    SymSeries S(long lo, long hi) const {
        SymSeries r = zero();
        for (long i = lo; i <= hi; ++i) r = r + Y(i);
        return r;
    }
    SymSeries SY() const { return S(0, N - 1); }

    SymPoly a(long i) const { return SymPoly::symbol(tab.alpha(i)); }
    SymPoly g(long i) const { return SymPoly::symbol(tab.gamma(i)); }
    SymPoly b(long i, long j) const { return SymPoly::symbol(tab.beta(i, j)); }
    SymPoly t() const { return SymPoly::symbol(tab.t()); }
    SymPoly chi() const { return chi_poly(cfg, tab); }
    SymPoly u1() const { return (SymPoly(1) - chi()) * SymPoly(Q(1, 2)); }
    static SymPoly q(long num, long den = 1) { return SymPoly(frac(num, den)); }
};

SymSeries factor_A(const Builder& B) { return generic_cocycle(B.cfg); }

SymSeries factor_B(const Builder& B) {
    SymPoly u = B.u1();
    return B.one() + B.Y(0) * u + B.YY(0, 0) * (u * u * Builder::q(1, 2));
}

SymSeries factor_C(const Builder& B) {
    long N = B.N;
    SymSeries r = B.one();
    for (long i = 0; i < N; ++i) {
        r = r + B.Y(i) * -B.a(-i);
        r = r + B.XY(i) * -B.a(-i);
        r = r + B.YX(i) * B.a(-i);
    }
    for (long b = 1; b < N; ++b) r = r + (B.S(b + 1, N) * B.Y(b)) * -B.a(-b);
    for (long a = 1; a < N; ++a) r = r + (B.Y(a) * B.S(a + 1, N)) * B.a(-a);
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) r = r + B.YY(a, b) * -B.b(-a, -b);
    SymSeries XS = B.X() + B.SY();
    for (long b = 0; b < N; ++b) r = r + (XS * B.Y(b)) * B.g(-b);
    for (long a = 0; a < N; ++a) r = r + (B.Y(a) * XS) * -B.g(-a);
    SymSeries lin = B.zero();
    for (long i = 0; i < N; ++i) lin = lin + B.Y(i) * B.a(-i);
    return r + lin * lin;
}

SymSeries factor_D(const Builder& B) {
    long N = B.N;
    SymPoly t = B.t();
    SymPoly half_t = t * Builder::q(1, 2);
    SymPoly half_t2 = t * t * Builder::q(1, 2);
    SymSeries SY = B.SY();
    SymSeries X = B.X();
    SymSeries r = B.one() + X * t + SY * t + (B.YX(0) - B.XY(0)) * half_t + (X * SY - SY * X) * half_t;
    for (long a = 1; a <= N; ++a)
        for (long b = 1; b <= N; ++b) {
            if (b < a) r = r + B.YY(a, b) * half_t;
            if (a < b) r = r + B.YY(a, b) * -half_t;
        }
    return r + (SY * SY) * half_t2 + (X * SY + SY * X) * half_t2;
}

SymSeries factor_E(const Builder& B) {
    long N = B.N, s = B.s;
    SymSeries r = B.one();
    for (long a = 1; a <= s; ++a) {
        SymSeries Sa = B.S(1, a - 1);
        r = r + (B.Y(a) + B.Y(a) * Sa - Sa * B.Y(a)) * B.a(s - a);
    }
    r = r + B.Y(0) * B.a(s);
    for (long a = s + 1; a < N; ++a) {
        SymSeries Qa = B.X() + B.S(a + 1, N);
        r = r + (B.Y(a) - B.Y(a) * Qa + Qa * B.Y(a)) * B.a(s - a);
    }
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) r = r + B.YY(a, b) * B.b(s - a, s - b);
    SymSeries XS = B.X() + B.SY();
    for (long j = 0; j < N; ++j) r = r + (XS * B.Y(j) - B.Y(j) * XS) * -B.g(s - j);
    return r;
}

SymSeries factor_F(const Builder& B) {
    long s = B.s;
    SymPoly u = B.u1();
    SymSeries Ss = B.S(1, s - 1);
    return B.one() + B.Y(s) * u + B.YY(s, s) * (u * u * Builder::q(1, 2)) + (B.Y(s) * Ss - Ss * B.Y(s)) * u;
}

SymSeries factor_G(const Builder& B) {
    long N = B.N, s = B.s;
    SymSeries Ss = B.S(1, s - 1);
    SymSeries r = B.one();
    SymSeries lin = B.zero();
    for (long i = 0; i < N; ++i) {
        r = r + (B.Y(i) + B.Y(i) * Ss - Ss * B.Y(i)) * -B.a(i - s);
        lin = lin + B.Y(i) * B.a(i - s);
    }
    for (long i = 0; i < s; ++i) r = r + (B.YX(i) - B.XY(i)) * -B.a(i - s);
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) r = r + B.YY(a, b) * -B.b(a - s, b - s);
    for (long i = 0; i < N; ++i) r = r + (B.XY(i) - B.YX(i)) * -B.g(i - s);
    return r + lin * lin;
}

SymSeries factor_H(const Builder& B) {
    long s = B.s;
    SymPoly t = B.t();
    SymSeries r = B.one() + B.X() * -t;
    for (long i = 1; i < s; ++i) r = r + (B.XY(i) - B.YX(i)) * t;
    return r + B.XX() * (t * t * Builder::q(1, 2));
}

SymSeries factor_J(const Builder& B) {
    long s = B.s;
    SymSeries Ss = B.S(1, s - 1);
    SymSeries r = B.one() + Ss;
    for (long i = 1; i < s; ++i)
        for (long j = 1; j < i; ++j) r = r + (B.YY(i, j) - B.YY(j, i)) * Builder::q(1, 2);
    return r + (Ss * Ss) * Builder::q(1, 2);
}

// Words of the substitution lemmas, built at level n.
struct Words {
    long p;
    int n;
    long N;

    FreeWord w(std::vector<Letter> l) const { return FreeWord(p, n, std::move(l)); }
    FreeWord one() const { return FreeWord(p, n); }
    FreeWord x() const { return FreeWord::x(p, n); }
    FreeWord y(long i) const { return FreeWord::y(p, n, mod(i, N)); }
    // y_hi y_{hi-1} ... y_lo, empty when hi < lo
    FreeWord ydesc(long hi, long lo) const {
        FreeWord r = one();
        for (long i = hi; i >= lo; --i) r = r * y(i);
        return r;
    }
    FreeWord z() const { return (x() * ydesc(N - 1, 1)).inverse() * y(0).inverse(); }
};

SymSeries from_nc(const NcSeries& s, long p, int n) {
    SymSeries r(p, n);
    for (size_t i = 0; i < r.size(); ++i) r[i] = SymPoly(s[i]);
    return r;
}

SymSeries embed_sym(const FreeWord& w) { return from_nc(embed_E(w, 2), w.p(), w.level()); }

SymSeries log_image(const FreeWord& w) { return from_nc(nc_log(embed_E(w, 2)), w.p(), w.level()); }

SymSeries substitute_sym(const SymSeries& f, const std::vector<SymSeries>& images) {
    SymSeries r(f.p(), f.level());
    int G = f.gens();
    r[0] = f[0];
    for (int g = 0; g < G; ++g)
        if (!f[f.idx(g)].is_zero()) r = r + images[g] * f[f.idx(g)];
    for (int g = 0; g < G; ++g)
        for (int h = 0; h < G; ++h)
            if (!f[f.idx(g, h)].is_zero()) r = r + (images[g] * images[h]) * f[f.idx(g, h)];
    return r;
}

SymSeries exp_sym(const SymSeries& L) {
    SymSeries one = SymSeries::one(L.p(), L.level());
    return one + L + (L * L) * SymPoly(Q(1, 2));
}

std::vector<SymSeries> images_of(const std::vector<FreeWord>& words) {
    std::vector<SymSeries> r;
    for (const auto& w : words) r.push_back(log_image(w));
    return r;
}

}  // namespace

SymSeries generic_cocycle(const OctagonConfig& cfg) {
    cfg.validate();
    Builder B(cfg);
    SymSeries f = B.one();
    for (long i = 0; i < B.N; ++i) f = f + B.Y(i) * B.a(i);
    for (long a = 0; a < B.N; ++a)
        for (long b = 0; b < B.N; ++b) f = f + B.YY(a, b) * B.b(a, b);
    for (long i = 0; i < B.N; ++i) f = f + (B.XY(i) - B.YX(i)) * B.g(i);
    return f;
}

SymSeries build_factor(char name, const OctagonConfig& cfg) {
    cfg.validate();
    Builder B(cfg);
    switch (name) {
        case 'A': return factor_A(B);
        case 'B': return factor_B(B);
        case 'C': return factor_C(B);
        case 'D': return factor_D(B);
        case 'E': return factor_E(B);
        case 'F': return factor_F(B);
        case 'G': return factor_G(B);
        case 'H': return factor_H(B);
        case 'J': return factor_J(B);
        default: throw PadicError(std::string("unknown factor '") + name + "'");
    }
}

SymSeries derived_factor(char name, const OctagonConfig& cfg) {
    cfg.validate();
    Builder B(cfg);
    Words W{cfg.p, cfg.n, B.N};
    long N = B.N, s = B.s;
    SymSeries f = generic_cocycle(cfg);
    FreeWord aw = W.ydesc(s - 1, 1);
    FreeWord z = W.z();
    switch (name) {
        case 'A': return f;
        case 'B': {
            SymSeries L = B.Y(0) * B.u1();
            return exp_sym(L);
        }
        case 'C': {
            std::vector<FreeWord> m{z, W.y(0)};
            for (long k = 1; k < N; ++k) {
                FreeWord wk = W.y(0) * W.x() * W.ydesc(N - 1, N - k + 1);
                m.push_back(wk * W.y(N - k) * wk.inverse());
            }
            return series_inverse(substitute_sym(f, images_of(m)));
        }
        case 'D': return exp_sym(log_image(z) * -B.t());
        case 'E': {
            std::vector<FreeWord> m{z};
            for (long b = 0; b < N; ++b) {
                if (b < s) {
                    FreeWord u = W.ydesc(s - b - 1, 1);
                    m.push_back(u.inverse() * W.y(s - b) * u);
                } else if (b > s) {
                    FreeWord u = W.ydesc(N + s - b - 1, 1) * z;
                    m.push_back(u.inverse() * W.y(s - b) * u);
                } else {
                    m.push_back(W.y(0));
                }
            }
            return substitute_sym(f, images_of(m));
        }
        case 'F': return embed_sym(aw.inverse()) * exp_sym(B.Y(s) * B.u1()) * embed_sym(aw);
        case 'G': {
            std::vector<FreeWord> m{aw.inverse() * W.x() * aw};
            for (long i = 0; i < N; ++i) {
                if (i + s < N) {
                    m.push_back(aw.inverse() * W.y(i + s) * aw);
                } else {
                    FreeWord u = W.x() * aw;
                    m.push_back(u.inverse() * W.y(i + s) * u);
                }
            }
            return series_inverse(substitute_sym(f, images_of(m)));
        }
        case 'H': return embed_sym(aw.inverse()) * exp_sym(B.X() * -B.t()) * embed_sym(aw);
        case 'J': return embed_sym(aw);
        default: throw PadicError(std::string("unknown factor '") + name + "'");
    }
}

namespace {

SymSeries product_of(const OctagonConfig& cfg, SymSeries (*make)(char, const OctagonConfig&)) {
    SymSeries P = SymSeries::one(cfg.p, cfg.n);
    for (char c : std::string("JHGFEDCBA")) P = P * make(c, cfg);
    return P;
}

}  // namespace

SymSeries octagon_product(const OctagonConfig& cfg) { return product_of(cfg, &build_factor); }

SymSeries octagon_product_derived(const OctagonConfig& cfg) { return product_of(cfg, &derived_factor); }

namespace {

// Largest non-t symbol occurring only in a degree-one monomial with
// rational coefficient.
int pick_pivot(const SymPoly& r) {
    std::map<int, int> occurrences;
    std::map<int, bool> linear;
    for (const auto& [k, c] : r.terms()) {
        auto ids = SymPoly::symbols_of(k);
        for (int id : ids) occurrences[id] += 1;
        if (ids.size() == 1) linear[ids[0]] = true;
    }
    int best = -1;
    for (const auto& [id, cnt] : occurrences)
        if (id != 0 && cnt == 1 && linear.count(id)) best = std::max(best, id);
    return best;
}

bool has_unknowns(const SymPoly& r) {
    for (const auto& kv : r.terms())
        for (int id : SymPoly::symbols_of(kv.first))
            if (id != 0) return true;
    return false;
}

}  // namespace

SymPoly RelationSet::reduce(const SymPoly& q) const {
    if (sub_.empty()) return q;
    return q.substituted(sub_);
}

bool RelationSet::add(const SymPoly& rel) {
    gens_.push_back(rel);
    SymPoly r = reduce(rel);
    if (r.is_zero()) return false;
    if (!has_unknowns(r)) throw PadicError("inconsistent relation set: " + r.str(tab_) + " = 0");
    int v = pick_pivot(r);
    if (v < 0) {
        unpivoted_.push_back(r);
        return true;
    }
    Q c = r.terms().at(SymPoly::key_of({v}));
    SymPoly rest = r - SymPoly::symbol(v) * SymPoly(c);
    SymPoly value = rest * SymPoly(-1 / c);
    for (auto& kv : sub_) kv.second = kv.second.substituted(v, value);
    sub_[v] = value;
    return true;
}

std::vector<SymPoly> deg1_relations(const SymSeries& prod) {
    std::vector<SymPoly> r;
    for (long i = 0; i < prod.N(); ++i) r.push_back(prod[prod.idx(prod.Y(i))]);
    return r;
}

std::vector<SymPoly> w12_relation(const OctagonConfig& cfg) {
    cfg.validate();
    Builder B(cfg);
    std::vector<SymPoly> r;
    for (long a = 0; a < B.N; ++a) {
        SymPoly rel = B.a(a) - B.a(-a) - e1_sym(cfg, B.tab, a);
        if (a == 0) rel = rel - B.u1();
        r.push_back(rel);
    }
    return r;
}

SymmetryReport prop85_check(const OctagonConfig& cfg) {
    cfg.validate();
    SymmetryReport rep;
    rep.cfg = cfg;
    SymTable tab(cfg.N());
    SymSeries P = octagon_product(cfg);
    rep.x_coeff_zero = P[P.idx(0)].is_zero() && P[0] == SymPoly(1);
    auto deg1 = deg1_relations(P);
    RelationSet only(tab);
    for (const auto& r : deg1) only.add(r);
    rep.deg1_rank = only.rank() + only.unpivoted().size();
    RelationSet w12(tab);
    for (const auto& r : w12_relation(cfg)) w12.add(r);
    for (const auto& r : deg1) {
        SymPoly left = w12.reduce(r);
        if (!left.is_zero()) rep.leftover.push_back(left.str(tab));
    }
    rep.pass = rep.x_coeff_zero && rep.leftover.empty();
    return rep;
}

namespace {

struct Display {
    const OctagonConfig& cfg;
    Builder B;
    long N;
    long s;
    long sinv;

    explicit Display(const OctagonConfig& c) : cfg(c), B(c), N(c.N()), s(c.s), sinv(inverse_mod(c.s, c.N())) {}

    SymPoly u() const { return SymPoly(1) - B.chi(); }
    SymPoly E(long a) const { return e1_sym(cfg, B.tab, a); }
    static SymPoly dl(long x, long a, long N) { return SymPoly(Q(mod(a - x, N) == 0 ? 1 : 0)); }
    SymPoly dl(long x, long a) const { return dl(x, a, N); }
    SymPoly M(long i) const {
        i = mod(i, N);
        return B.t() + SymPoly(Q(1 <= i && i < s ? 1 : 0));
    }
    long nrm(long i) const {
        i = mod(i, N);
        return i == 0 ? N : i;
    }
    SymPoly N2(long a, long b) const {
        a = nrm(a);
        b = nrm(b);
        SymPoly v;
        SymPoly t = B.t();
        if ((1 <= a && a < b && b < s) || (s <= a && a < b && b <= N)) v = v - t;
        if ((1 <= b && b < a && a < s) || (s <= b && b < a && a <= N)) v = v + t;
        if (1 <= a && a < b && b < s) v = v - SymPoly(1);
        if (1 <= b && b < a && a < s) v = v + SymPoly(1);
        return v;
    }
    SymPoly D2(long a, long b) const {
        SymPoly v = B.g(-b) - B.g(-a);
        long A = nrm(a), Bn = nrm(b);
        if (A < Bn)
            v = v + B.a(-a);
        else if (Bn < A)
            v = v - B.a(-b);
        return v;
    }
    SymPoly alp(long a) const { return B.a(a); }
    SymPoly alm(long a) const { return B.a(-a); }
    SymPoly Tam(long a) const { return B.a(s - a); }
    SymPoly Ta(long a) const { return B.a(a - s); }
    SymPoly beta(long a, long b) const { return B.b(a, b); }

    // Right-hand side as printed.
    SymPoly printed(long a, long b) const {
        SymPoly uu = u();
        SymPoly h = SymPoly(Q(1, 2));
        SymPoly v = beta(a, b) - beta(-a, -b) + beta(s - a, s - b) - beta(a - s, b - s);
        v += -(alm(a) * E(b)) - alm(a) * uu * dl(0, b) - E(a) * E(b) - uu * dl(0, a) * E(b) - E(a) * uu * dl(0, b);
        v += Ta(a) * E(b) + Ta(a) * uu * dl(0, b) - SymPoly(Q(7, 8)) * uu * uu * dl(0, a) * dl(0, b) + D2(a, b);
        v += SymPoly(Q(1, 8)) * uu * uu * dl(s, a) * dl(s, b) + h * uu * dl(0, a) * alp(b) + h * uu * dl(s, a) * Tam(b);
        v += -D2(a - s, b - s) - h * M(a) * M(b) + h * N2(a, b) + Tam(a) * dl(s, b) - dl(s, a) * Tam(b);
        v += -(E(a) * M(b)) - uu * dl(0, a) * M(b);
        return v;
    }
    SymPoly missing(long a, long b) const { return Ta(a) * M(b); }
    SymPoly chi1(long a, long b) const {
        SymPoly v = beta(a, b) - beta(-a, -b) + beta(1 - a, 1 - b) - beta(a - 1, b - 1) + D2(a, b) - D2(a - 1, b - 1);
        v += Tam(a) * dl(1, b) - dl(1, a) * Tam(b);
        return v;
    }
};

RelationSet octagon_relations(const OctagonConfig& cfg, const SymSeries& P) {
    RelationSet rs(SymTable(cfg.N()));
    for (const auto& r : w12_relation(cfg)) rs.add(r);
    for (const auto& r : deg1_relations(P)) rs.add(r);
    return rs;
}

void add_shuffle(RelationSet& rs, const Builder& B) {
    for (long a = 0; a < B.N; ++a) {
        rs.add(B.b(a, a) - B.a(a) * B.a(a) * SymPoly(Q(1, 2)));
        for (long b = a + 1; b < B.N; ++b) rs.add(B.b(b, a) + B.b(a, b) - B.a(a) * B.a(b));
    }
}

}  // namespace

ResidualReport thm8x_check(const OctagonConfig& cfg) {
    cfg.validate();
    ResidualReport rep;
    rep.cfg = cfg;
    SymTable tab(cfg.N());
    SymSeries P = octagon_product(cfg);
    rep.x_coeff_zero = P[P.idx(0)].is_zero() && P[0] == SymPoly(1);
    auto deg1 = deg1_relations(P);
    {
        RelationSet only(tab);
        for (const auto& r : deg1) only.add(r);
        rep.deg1_rank = only.rank() + only.unpivoted().size();
    }
    RelationSet rs = octagon_relations(cfg, P);
    Display D(cfg);
    long N = cfg.N();
    bool all_zero = true;
    rep.printed_deviation_matches = true;
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
            const SymPoly& coeff = P[P.idx(P.Y(a), P.Y(b))];
            SymPoly printed_res = rs.reduce(D.printed(a, b) - coeff);
            SymPoly res = rs.reduce(D.printed(a, b) + D.missing(a, b) - coeff);
            if (!printed_res.is_zero()) ++rep.printed_nonzero;
            if (printed_res != rs.reduce(-D.missing(a, b))) rep.printed_deviation_matches = false;
            if (!res.is_zero()) all_zero = false;
            rep.residuals.push_back({a, b, res});
        }
    if (!all_zero) {
        RelationSet with_shuffle = rs;
        add_shuffle(with_shuffle, D.B);
        bool fixed = true;
        for (const auto& r : rep.residuals)
            if (!with_shuffle.reduce(r.poly).is_zero()) fixed = false;
        rep.shuffle_needed = fixed;
    }
    bool chi1_ok = true;
    if (cfg.s == 1) {
        rep.has_chi1 = true;
        std::map<int, SymPoly> t0{{tab.t(), SymPoly()}};
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b) {
                const SymPoly& coeff = P[P.idx(P.Y(a), P.Y(b))];
                SymPoly res = rs.reduce(D.chi1(a, b) - coeff).substituted(t0);
                if (!res.is_zero()) chi1_ok = false;
                rep.chi1_residuals.push_back({a, b, res});
            }
    }
    rep.pass = rep.x_coeff_zero && all_zero && chi1_ok;
    return rep;
}

std::string thm8_json(const ResidualReport& r) {
    SymTable tab(r.cfg.N());
    nlohmann::ordered_json j;
    j["config"] = {{"p", r.cfg.p}, {"n", r.cfg.n}, {"s", r.cfg.s}};
    j["x_coeff_zero"] = r.x_coeff_zero;
    j["deg1_rank"] = r.deg1_rank;
    auto res = nlohmann::ordered_json::array();
    for (const auto& x : r.residuals) res.push_back({{"a", x.a}, {"b", x.b}, {"poly", x.poly.str(tab)}});
    j["residuals"] = res;
    if (r.has_chi1) {
        auto c1 = nlohmann::ordered_json::array();
        for (const auto& x : r.chi1_residuals) c1.push_back({{"a", x.a}, {"b", x.b}, {"poly", x.poly.str(tab)}});
        j["chi1_residuals"] = c1;
    }
    j["printed_display_nonzero"] = r.printed_nonzero;
    j["printed_deviation_is_minus_T_alpha_M"] = r.printed_deviation_matches;
    j["extra_relations_used"] = nlohmann::ordered_json::array();
    if (r.shuffle_needed) j["extra_relations_used"].push_back("shuffle");
    j["pass"] = r.pass;
    return j.dump(2);
}

DeriveReport derive_factor_by_subst(char name, const OctagonConfig& cfg) {
    DeriveReport rep{name, cfg, {}};
    SymSeries d = derived_factor(name, cfg);
    SymSeries b = build_factor(name, cfg);
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] != b[i]) rep.diffs.push_back({mono_name(d.mono(i)), d[i], b[i]});
    return rep;
}

LevelFamily prop86_defect(const LevelFamily& beta_m, const Q& c) {
    int m = beta_m.dim();
    std::vector<int> neg(m, -1);
    std::vector<Q> zero(m, Q(0)), shift(m, c);
    LevelFamily refl = pushforward_affine(beta_m, neg, zero);
    LevelFamily sum = beta_m - refl + translate(refl, shift) - translate(beta_m, shift);
    return Q(-1) * sum;
}

}  // namespace pam
