#include "pam/magnus.hpp"

#include <json.hpp>

#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace pam {

FreeWord::FreeWord(long p, int level, std::vector<Letter> letters) : p_(p), level_(level), letters_(std::move(letters)) {
    long ny = num_y();
    for (const auto& l : letters_) {
        if (l.exp != 1 && l.exp != -1) throw PadicError("word letters carry exponent +1 or -1");
        if (l.gen < 0 || l.gen > ny) throw PadicError("generator index out of range for this level");
    }
}

long FreeWord::num_y() const {
    long r = 1;
    for (int i = 0; i < level_; ++i) r *= p_;
    return r;
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
    if (p_ != o.p_ || level_ != o.level_) throw PadicError("multiplying words from different levels");
    auto l = letters_;
    l.insert(l.end(), o.letters_.begin(), o.letters_.end());
    return FreeWord(p_, level_, std::move(l));
}

FreeWord FreeWord::inverse() const {
    std::vector<Letter> l;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) l.push_back({it->gen, -it->exp});
    return FreeWord(p_, level_, std::move(l));
}

FreeWord FreeWord::power(long k) const {
    FreeWord base = k < 0 ? inverse() : *this;
    FreeWord r(p_, level_);
    for (long i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
    return r;
}

FreeWord FreeWord::reduced() const {
    std::vector<Letter> st;
    for (const auto& l : letters_) {
        if (!st.empty() && st.back().gen == l.gen && st.back().exp == -l.exp)
            st.pop_back();
        else
            st.push_back(l);
    }
    return FreeWord(p_, level_, std::move(st));
}

long FreeWord::x_exponent() const {
    long e = 0;
    for (const auto& l : letters_)
        if (l.gen == 0) e += l.exp;
    return e;
}

std::string FreeWord::str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (size_t k = 0; k < letters_.size(); ++k) {
        if (k) s += " ";
        const auto& l = letters_[k];
        s += l.gen == 0 ? "x" : "y" + std::to_string(l.gen - 1);
        if (l.exp == -1) s += "^-1";
    }
    return s;
}

FreeWord commutator(const FreeWord& a, const FreeWord& b) { return a * b * a.inverse() * b.inverse(); }

namespace {

class WordParser {
public:
    WordParser(const std::string& t, long p, int level) : t_(t), p_(p), level_(level) {}

    FreeWord parse() {
        FreeWord w = expr();
        skip_ws();
        if (pos_ != t_.size()) fail("unexpected '" + std::string(1, t_[pos_]) + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw PadicError("malformed word '" + t_ + "' at offset " + std::to_string(pos_) + ": " + why);
    }
    void skip_ws() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    bool starts_atom() {
        skip_ws();
        if (pos_ >= t_.size()) return false;
        char c = t_[pos_];
        return c == 'x' || c == 'y' || c == '[' || c == '(' || c == '1';
    }
    long integer() {
        size_t start = pos_;
        if (pos_ < t_.size() && (t_[pos_] == '-' || t_[pos_] == '+')) ++pos_;
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
        std::string s = t_.substr(start, pos_ - start);
        if (s.empty() || s == "-" || s == "+") fail("expected an integer");
        if (s.size() > 9) fail("integer too large");
        return std::stol(s);
    }
    FreeWord expr() {
        FreeWord w = term();
        while (true) {
            skip_ws();
            if (pos_ < t_.size() && t_[pos_] == '*') {
                ++pos_;
                w = w * term();
            } else if (starts_atom()) {
                w = w * term();
            } else {
                break;
            }
        }
        return w;
    }
    FreeWord term() {
        FreeWord a = atom();
        skip_ws();
        if (pos_ < t_.size() && t_[pos_] == '^') {
            ++pos_;
            skip_ws();
            a = a.power(integer());
        }
        return a;
    }
    FreeWord atom() {
        skip_ws();
        if (pos_ >= t_.size()) fail("unexpected end of input");
        char c = t_[pos_];
        if (c == 'x') {
            ++pos_;
            return FreeWord::x(p_, level_);
        }
        if (c == '1') {
            ++pos_;
            return FreeWord(p_, level_);
        }
        if (c == 'y') {
            ++pos_;
            if (pos_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[pos_]))) fail("y needs an index");
            long i = integer();
            long ny = 1;
            for (int k = 0; k < level_; ++k) ny *= p_;
            if (i < 0 || i >= ny) fail("index y" + std::to_string(i) + " out of range at this level");
            return FreeWord::y(p_, level_, i);
        }
        if (c == '[') {
            ++pos_;
            FreeWord a = expr();
            skip_ws();
            if (pos_ >= t_.size() || t_[pos_] != ',') fail("expected ','");
            ++pos_;
            FreeWord b = expr();
            skip_ws();
            if (pos_ >= t_.size() || t_[pos_] != ']') fail("expected ']'");
            ++pos_;
            return commutator(a, b);
        }
        if (c == '(') {
            ++pos_;
            FreeWord a = expr();
            skip_ws();
            if (pos_ >= t_.size() || t_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return a;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& t_;
    long p_;
    int level_;
    size_t pos_ = 0;
};

}  // namespace

FreeWord parse_word(const std::string& text, long p, int level) { return WordParser(text, p, level).parse(); }

bool kernel_check(const FreeWord& w) { return w.x_exponent() == 0; }

FreeWord project_pr(const FreeWord& w, int target_level) {
    int L = w.level();
    if (target_level < 0 || target_level > L) throw PadicError("project_pr: target level out of range");
    long p = w.p();
    long pn = 1;
    for (int i = 0; i < target_level; ++i) pn *= p;
    long pm = 1;
    for (int i = target_level; i < L; ++i) pm *= p;
    std::vector<Letter> out;
    for (const auto& l : w.letters()) {
        if (l.gen == 0) {
            for (long k = 0; k < pm; ++k) out.push_back({0, l.exp});
            continue;
        }
        long j = l.gen - 1;
        long i = j % pn;
        long k = j / pn;
        for (long t = 0; t < k; ++t) out.push_back({0, -1});
        out.push_back({static_cast<int>(1 + i), l.exp});
        for (long t = 0; t < k; ++t) out.push_back({0, 1});
    }
    return FreeWord(p, target_level, std::move(out)).reduced();
}

NcSeries::NcSeries(long p, int level, int degree) : p_(p), level_(level), degree_(degree) {
    if (degree < 0) throw PadicError("negative truncation degree");
    long ny = 1;
    for (int i = 0; i < level; ++i) ny *= p;
    gens_ = static_cast<int>(1 + ny);
    size_t total = 0;
    size_t pw = 1;
    for (int k = 0; k <= degree + 1; ++k) {
        offset_.push_back(total);
        total += pw;
        pw *= static_cast<size_t>(gens_);
    }
    c_.assign(offset_[degree + 1], Q(0));
}

NcSeries NcSeries::one(long p, int level, int degree) {
    NcSeries s(p, level, degree);
    s.c_[0] = 1;
    return s;
}

NcSeries NcSeries::generator(long p, int level, int degree, int gen) {
    NcSeries s(p, level, degree);
    if (degree >= 1) s.c_.at(1 + gen) = 1;
    return s;
}

size_t NcSeries::index(const Mono& m) const {
    if (static_cast<int>(m.size()) > degree_) throw PadicError("monomial exceeds truncation degree");
    size_t idx = 0;
    for (int g : m) {
        if (g < 0 || g >= gens_) throw PadicError("monomial generator out of range");
        idx = idx * static_cast<size_t>(gens_) + static_cast<size_t>(g);
    }
    return offset_[m.size()] + idx;
}

int NcSeries::mono_degree(size_t idx) const {
    int k = 0;
    while (offset_[k + 1] <= idx) ++k;
    return k;
}

Mono NcSeries::mono(size_t idx) const {
    int k = mono_degree(idx);
    size_t local = idx - offset_[k];
    Mono m(k);
    for (int j = k - 1; j >= 0; --j) {
        m[j] = static_cast<int>(local % static_cast<size_t>(gens_));
        local /= static_cast<size_t>(gens_);
    }
    return m;
}

Q NcSeries::coeff(const Mono& m) const {
    if (static_cast<int>(m.size()) > degree_) return 0;
    return c_[index(m)];
}

namespace {

void check_compatible(const NcSeries& a, const NcSeries& b) {
    if (a.gens() != b.gens() || a.p() != b.p()) throw PadicError("series from different levels");
}

}  // namespace

NcSeries NcSeries::operator+(const NcSeries& o) const {
    check_compatible(*this, o);
    NcSeries r(p_, level_, std::max(degree_, o.degree_));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

NcSeries NcSeries::operator-(const NcSeries& o) const { return *this + o * Q(-1); }

NcSeries NcSeries::operator*(const Q& s) const {
    NcSeries r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
}

NcSeries NcSeries::operator*(const NcSeries& o) const {
    check_compatible(*this, o);
    int D = std::max(degree_, o.degree_);
    NcSeries r(p_, level_, D);
    std::vector<size_t> pw(D + 1, 1);
    for (int k = 1; k <= D; ++k) pw[k] = pw[k - 1] * static_cast<size_t>(gens_);
    for (int da = 0; da <= std::min(D, degree_); ++da) {
        for (size_t la = 0; la < pw[da]; ++la) {
            const Q& a = c_[offset_[da] + la];
            if (a == 0) continue;
            for (int db = 0; db <= std::min(D - da, o.degree_); ++db) {
                size_t base = r.offset_[da + db] + la * pw[db];
                size_t ob = o.offset_[db];
                for (size_t lb = 0; lb < pw[db]; ++lb) {
                    const Q& b = o.c_[ob + lb];
                    if (b == 0) continue;
                    r.c_[base + lb] += a * b;
                }
            }
        }
    }
    return r;
}

NcSeries NcSeries::times_exp(int gen, const Q& e) const {
    NcSeries r(p_, level_, degree_);
    std::vector<size_t> pw(degree_ + 1, 1);
    for (int k = 1; k <= degree_; ++k) pw[k] = pw[k - 1] * static_cast<size_t>(gens_);
    std::vector<Q> ek(degree_ + 1);
    ek[0] = 1;
    for (int k = 1; k <= degree_; ++k) ek[k] = ek[k - 1] * e / k;
    for (int d = 0; d <= degree_; ++d)
        for (size_t l = 0; l < pw[d]; ++l) {
            const Q& a = c_[offset_[d] + l];
            if (a == 0) continue;
            size_t tail = 0;
            for (int k = 0; d + k <= degree_; ++k) {
                r.c_[offset_[d + k] + l * pw[k] + tail] += a * ek[k];
                tail = tail * static_cast<size_t>(gens_) + static_cast<size_t>(gen);
            }
        }
    return r;
}

NcSeries NcSeries::truncated(int degree) const {
    NcSeries r(p_, level_, degree);
    size_t n = std::min(r.c_.size(), c_.size());
    for (size_t i = 0; i < n; ++i) r.c_[i] = c_[i];
    return r;
}

NcSeries NcSeries::homogeneous(int k) const {
    NcSeries r(p_, level_, degree_);
    if (k > degree_) return r;
    for (size_t i = offset_[k]; i < offset_[k + 1]; ++i) r.c_[i] = c_[i];
    return r;
}

std::string mono_name(const Mono& m) {
    if (m.empty()) return "1";
    std::string s;
    for (size_t k = 0; k < m.size(); ++k) {
        if (k) s += ".";
        s += m[k] == 0 ? "X" : "Y" + std::to_string(m[k] - 1);
    }
    return s;
}

Mono parse_mono(const std::string& s) {
    Mono m;
    if (s == "1" || s.empty()) return m;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
        if (tok == "X")
            m.push_back(0);
        else if (tok.size() > 1 && tok[0] == 'Y')
            m.push_back(1 + std::stoi(tok.substr(1)));
        else
            throw PadicError("malformed monomial '" + s + "'");
    }
    return m;
}

NcSeries embed_E(const FreeWord& w, int degree) {
    NcSeries s = NcSeries::one(w.p(), w.level(), degree);
    const auto& L = w.letters();
    size_t k = 0;
    while (k < L.size()) {
        int g = L[k].gen;
        long e = 0;
        while (k < L.size() && L[k].gen == g) e += L[k++].exp;
        if (e != 0) s = s.times_exp(g, Q(e));
    }
    return s;
}

NcSeries embed_E0(const FreeWord& w, int degree) {
    std::vector<Letter> ys;
    for (const auto& l : w.letters())
        if (l.gen != 0) ys.push_back(l);
    return embed_E(FreeWord(w.p(), w.level(), ys), degree);
}

NcSeries specialize_E0(const NcSeries& s) {
    NcSeries r = s;
    for (size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0) continue;
        for (int g : r.mono(i))
            if (g == 0) {
                r[i] = 0;
                break;
            }
    }
    return r;
}

NcSeries nc_log(const NcSeries& s) {
    if (s[0] != 1) throw PadicError("log needs constant term 1");
    NcSeries x = s;
    x[0] = 0;
    NcSeries r(s.p(), s.level(), s.degree());
    NcSeries pw = x;
    for (int k = 1; k <= s.degree(); ++k) {
        r = r + pw * Q(k % 2 == 1 ? 1 : -1, k);
        pw = pw * x;
    }
    return r;
}

NcSeries nc_exp(const NcSeries& s) {
    if (s[0] != 0) throw PadicError("exp needs zero constant term");
    NcSeries r = NcSeries::one(s.p(), s.level(), s.degree());
    NcSeries pw = r;
    for (int k = 1; k <= s.degree(); ++k) {
        pw = pw * s * Q(1, k);
        r = r + pw;
    }
    return r;
}

NcSeries substitute(const NcSeries& s, const std::vector<NcSeries>& images) {
    if (static_cast<int>(images.size()) != s.gens()) throw PadicError("substitute: wrong number of images");
    int D = s.degree();
    const NcSeries& ref = images.at(0);
    std::vector<char> live(s.size(), 0);
    for (size_t i = s.size(); i-- > 0;) {
        if (s[i] != 0) live[i] = 1;
        if (live[i] && i > 0) {
            int k = s.mono_degree(i);
            auto m = s.mono(i);
            m.pop_back();
            (void)k;
            live[s.index(m)] = 1;
        }
    }
    std::function<NcSeries(const Mono&, int)> rec = [&](const Mono& u, int budget) {
        NcSeries r(ref.p(), ref.level(), budget);
        r[0] = s[s.index(u)];
        if (budget == 0) return r;
        for (int g = 0; g < s.gens(); ++g) {
            Mono ug = u;
            ug.push_back(g);
            if (static_cast<int>(ug.size()) > D || !live[s.index(ug)]) continue;
            r = r + (images[g].truncated(budget) * rec(ug, budget - 1)).truncated(budget);
        }
        return r;
    };
    return rec({}, D);
}

NcSeries project_pr(const NcSeries& s, int target_level) {
    int L = s.level();
    if (target_level < 0 || target_level > L) throw PadicError("project_pr: target level out of range");
    long p = s.p();
    long pn = 1;
    for (int i = 0; i < target_level; ++i) pn *= p;
    long pm = 1;
    for (int i = target_level; i < L; ++i) pm *= p;
    int D = s.degree();
    std::vector<NcSeries> images;
    images.push_back(NcSeries::generator(p, target_level, D, 0) * Q(pm));
    for (int g = 1; g < s.gens(); ++g) {
        long j = g - 1;
        long i = j % pn;
        long k = j / pn;
        NcSeries e = NcSeries::one(p, target_level, D).times_exp(0, Q(-k));
        e = e * NcSeries::generator(p, target_level, D, static_cast<int>(1 + i));
        images.push_back(e.times_exp(0, Q(k)));
    }
    return substitute(s, images);
}

namespace {

using Sparse = std::map<Mono, Q>;

Sparse sparse_mul(const Sparse& a, const Sparse& b) {
    Sparse r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Mono m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            r[m] += ca * cb;
        }
    return r;
}

Sparse left_normed_bracket(const Mono& w) {
    Sparse b{{Mono{w[0]}, Q(1)}};
    for (size_t k = 1; k < w.size(); ++k) {
        Sparse g{{Mono{w[k]}, Q(1)}};
        Sparse r = sparse_mul(b, g);
        for (const auto& [m, c] : sparse_mul(g, b)) r[m] -= c;
        b = std::move(r);
    }
    return b;
}

}  // namespace

bool log_lie_check(const NcSeries& s) {
    if (s[0] != 1) return false;
    NcSeries L = nc_log(s);
    for (int k = 1; k <= s.degree(); ++k) {
        Sparse dyn;
        Sparse target;
        for (size_t i = 0; i < L.size(); ++i) {
            if (L[i] == 0 || L.mono_degree(i) != k) continue;
            auto m = L.mono(i);
            target[m] += L[i] * k;
            for (const auto& [mm, c] : left_normed_bracket(m)) dyn[mm] += c * L[i];
        }
        for (auto it = dyn.begin(); it != dyn.end();) it = it->second == 0 ? dyn.erase(it) : std::next(it);
        for (auto it = target.begin(); it != target.end();) it = it->second == 0 ? target.erase(it) : std::next(it);
        if (dyn != target) return false;
    }
    return true;
}

std::vector<std::pair<Mono, long>> shuffle_product(const Mono& u, const Mono& v) {
    std::map<Mono, long> acc;
    Mono cur;
    std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
        if (i == u.size() && j == v.size()) {
            acc[cur] += 1;
            return;
        }
        if (i < u.size()) {
            cur.push_back(u[i]);
            rec(i + 1, j);
            cur.pop_back();
        }
        if (j < v.size()) {
            cur.push_back(v[j]);
            rec(i, j + 1);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return {acc.begin(), acc.end()};
}

bool shuffle_check(const NcSeries& s, const Mono& u, const Mono& v) {
    if (static_cast<int>(u.size() + v.size()) > s.degree()) throw PadicError("shuffle_check: degree exceeds truncation");
    Q lhs = s.coeff(u) * s.coeff(v);
    Q rhs = 0;
    for (const auto& [w, k] : shuffle_product(u, v)) rhs += Q(k) * s.coeff(w);
    return lhs == rhs;
}

NcSeries level_series(const FreeWord& g, int n, int degree) { return embed_E(project_pr(g, n), degree); }

NcSeries level_series_E0(const FreeWord& g, int n, int degree) { return embed_E0(project_pr(g, n), degree); }

LevelFamily beta_measures(const FreeWord& g, int r, const PrimeContext& ctx) {
    if (!kernel_check(g)) throw PadicError("beta_measures: word '" + g.str() + "' is not in the kernel");
    if (g.p() != ctx.p) throw PadicError("beta_measures: prime mismatch");
    int top = g.level();
    if (r == 0) return LevelFamily::tabulate(ctx, 0, top, [](int, const Point&) -> Q { return Q(1); });
    std::vector<NcSeries> series;
    for (int n = 0; n <= top; ++n) series.push_back(level_series_E0(g, n, r));
    return LevelFamily::tabulate(ctx, r, top, [&](int n, const Point& a) -> Q {
        Mono m(r);
        for (int k = 0; k < r; ++k) m[k] = static_cast<int>(1 + a[k]);
        return series[n].coeff(m);
    });
}

GradedSequence beta_sequence(const FreeWord& g, int degree, const PrimeContext& ctx) {
    GradedSequence s;
    for (int r = 0; r <= degree; ++r) s.entries.push_back(beta_measures(g, r, ctx));
    return s;
}

AlphaGammaTables alpha_gamma_tables(const FreeWord& g, const PrimeContext& ctx) {
    AlphaGammaTables t;
    for (int n = 0; n <= g.level(); ++n) {
        NcSeries s = level_series(g, n, 2);
        Coefficients c{s};
        long pn = ctx.pow(n);
        std::vector<Q> al(pn), ga(pn);
        for (long i = 0; i < pn; ++i) {
            al[i] = c.alpha(i);
            ga[i] = c.gamma(i);
        }
        t.alpha.push_back(al);
        t.gamma.push_back(ga);
    }
    return t;
}

Mono WordShape::mono() const {
    Mono m;
    for (size_t k = 0; k < n.size(); ++k) {
        for (int j = 0; j < n[k]; ++j) m.push_back(0);
        if (k < i.size()) m.push_back(static_cast<int>(1 + i[k]));
    }
    return m;
}

int WordShape::degree() const { return static_cast<int>(mono().size()); }

CongruenceReport thm31_congruence(const FreeWord& g, const WordShape& shape, int n, int m, const PrimeContext& ctx) {
    int r = static_cast<int>(shape.i.size());
    if (r < 1 || static_cast<int>(shape.n.size()) != r + 1) throw PadicError("thm31: shape needs r >= 1 and r + 1 exponents");
    long pn = ctx.pow(n);
    for (long ik : shape.i)
        if (ik < 0 || ik >= pn) throw PadicError("thm31: index out of range");
    for (int nk : shape.n)
        if (nk < 0) throw PadicError("thm31: negative exponent");
    if (n < 0 || m < 0 || n + m > g.level()) throw PadicError("thm31: levels out of range");
    long p = ctx.p;
    int deg = shape.degree();
    NcSeries s = level_series(g, n, deg);
    Q lambda = s.coeff(shape.mono());

    auto beta = beta_measures(g, r, ctx);
    MPoly poly = MPoly::constant(r, 1);
    Q fact = 1;
    for (int nk : shape.n) fact *= Q(factorial(nk));
    poly = poly * (1 / fact);
    Q inv = Q(1, pn);
    auto x = [&](int k) { return MPoly::var(r, k); };
    auto cst = [&](long v) { return MPoly::constant(r, Q(v)); };
    poly = poly * ((cst(shape.i[0]) - x(0)) * inv).pow(shape.n[0]);
    for (int k = 0; k + 1 < r; ++k)
        poly = poly * ((x(k) - x(k + 1) - cst(shape.i[k]) + cst(shape.i[k + 1])) * inv).pow(shape.n[k + 1]);
    poly = poly * ((x(r - 1) - cst(shape.i[r - 1])) * inv).pow(shape.n[r]);
    auto box = box_integral(beta, shape.i, n, poly, n + m);

    CongruenceReport rep;
    rep.lambda = lambda;
    rep.riemann = box.value;
    rep.achieved = vp(Q(lambda - box.value), p);
    long loss = 0;
    for (int nk : shape.n) loss += vp_factorial(nk, p);
    rep.guarantee = m - loss - vp_factorial(deg, p);
    rep.pass = rep.achieved >= rep.guarantee;
    return rep;
}

CheckList prop72_roundtrip(const FreeWord& g, int r, int terms, const PrimeContext& ctx) {
    CheckList out;
    if (!kernel_check(g)) throw PadicError("prop72_roundtrip: word is not in the kernel");
    if (r < 1 || terms < 1) throw PadicError("prop72_roundtrip: need r >= 1 and terms >= 1");
    long p = ctx.p;
    auto beta = beta_measures(g, r, ctx);
    IwasawaPoly F1 = transform_F(beta, terms, beta.n_max());

    int top = r * (terms - 1);
    NcSeries s = level_series(g, 0, r + top);
    MPoly acc(r);
    std::vector<int> nv(r, 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == r) {
            Mono w;
            for (int j = 0; j < r; ++j) {
                for (int t = 0; t < nv[j]; ++t) w.push_back(0);
                w.push_back(1);
            }
            Q lam = s.coeff(w);
            if (lam == 0) return;
            MPoly term = MPoly::constant(r, lam);
            for (int j = 0; j < r; ++j) {
                MPoly sum(r);
                for (int i = j; i < r; ++i) sum = sum + MPoly::var(r, i);
                term = term * (sum * Q(-1)).pow(nv[j]);
            }
            acc = acc + term;
            return;
        }
        for (int v = 0; v <= left; ++v) {
            nv[k] = v;
            rec(k + 1, left - v);
        }
        nv[k] = 0;
    };
    rec(0, top);

    long worst = kInfinity;
    std::string first_bad;
    long exact = 0;
    for (size_t c = 0; c < F1.size(); ++c) {
        auto j = F1.exponent(c);
        auto it = acc.terms().find(std::vector<int>(j.begin(), j.end()));
        Q v2 = it == acc.terms().end() ? Q(0) : it->second;
        Q d = F1.coeffs[c] - v2;
        long a = vp(d, p);
        if (a == kInfinity) ++exact;
        if (a < F1.guarantee[c] && first_bad.empty()) {
            std::ostringstream os;
            os << "exponent (";
            for (size_t k = 0; k < j.size(); ++k) os << (k ? "," : "") << j[k];
            os << "): moments " << to_string(F1.coeffs[c]) << " vs coefficients " << to_string(v2);
            first_bad = os.str();
        }
        worst = std::min(worst, a == kInfinity ? kInfinity : a - F1.guarantee[c]);
    }
    out.add("F(beta_r) from moments agrees with the coefficient expansion, r=" + std::to_string(r) + " word " + g.str(),
            first_bad.empty(), first_bad.empty() ? std::to_string(exact) + " of " + std::to_string(F1.size()) + " coefficients exact" : first_bad);
    return out;
}

std::string nc_series_json(const NcSeries& s) {
    nlohmann::ordered_json j;
    j["level"] = s.level();
    j["degree"] = s.degree();
    auto arr = nlohmann::ordered_json::array();
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0) continue;
        nlohmann::ordered_json t;
        t["mono"] = mono_name(s.mono(i));
        t["value"] = to_string(s[i]);
        arr.push_back(t);
    }
    j["terms"] = arr;
    return j.dump(2);
}

}  // namespace pam
