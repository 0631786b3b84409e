#pragma once

#include "pam/classical.hpp"
#include "pam/measure.hpp"

#include <string>
#include <vector>

namespace pam {

// Generator 0 is x, generator 1 + i is y_i.
struct Letter {
    int gen;
    int exp;  // +1 or -1

    bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
};

class FreeWord {
public:
    FreeWord(long p, int level) : p_(p), level_(level) {}
    FreeWord(long p, int level, std::vector<Letter> letters);

    static FreeWord x(long p, int level) { return FreeWord(p, level, {{0, 1}}); }
    static FreeWord y(long p, int level, long i) { return FreeWord(p, level, {{static_cast<int>(1 + i), 1}}); }

    long p() const { return p_; }
    int level() const { return level_; }
    long num_y() const;
    const std::vector<Letter>& letters() const { return letters_; }

    FreeWord operator*(const FreeWord& o) const;
    FreeWord inverse() const;
    FreeWord power(long k) const;
    FreeWord reduced() const;
    long x_exponent() const;
    std::string str() const;

private:
    long p_;
    int level_;
    std::vector<Letter> letters_;
};

FreeWord commutator(const FreeWord& a, const FreeWord& b);
// Grammar: x, y<i>, ^-1 (or ^<int>) suffix, [a,b], parentheses, '*' or
// whitespace for concatenation.
FreeWord parse_word(const std::string& text, long p, int level);

bool kernel_check(const FreeWord& w);
// Image at a lower level under x -> x^{p^m}, y_{i+kp^n} -> x^{-k} y_i x^k.
FreeWord project_pr(const FreeWord& w, int target_level);

using Mono = std::vector<int>;

// Truncated non-commutative series in X, Y_0..Y_{p^n-1}.
class NcSeries {
public:
    NcSeries(long p, int level, int degree);

    static NcSeries one(long p, int level, int degree);
    static NcSeries generator(long p, int level, int degree, int gen);

    long p() const { return p_; }
    int level() const { return level_; }
    int degree() const { return degree_; }
    int gens() const { return gens_; }
    size_t size() const { return c_.size(); }

    size_t index(const Mono& m) const;
    Mono mono(size_t idx) const;
    int mono_degree(size_t idx) const;

    const Q& operator[](size_t idx) const { return c_[idx]; }
    Q& operator[](size_t idx) { return c_[idx]; }
    const std::vector<Q>& coeffs() const { return c_; }
    Q coeff(const Mono& m) const;
    void set(const Mono& m, const Q& v) { c_.at(index(m)) = v; }

    NcSeries operator+(const NcSeries& o) const;
    NcSeries operator-(const NcSeries& o) const;
    NcSeries operator*(const NcSeries& o) const;
    NcSeries operator*(const Q& s) const;
    bool operator==(const NcSeries& o) const { return gens_ == o.gens_ && degree_ == o.degree_ && c_ == o.c_; }

    // Right multiplication by exp(e * generator).
    NcSeries times_exp(int gen, const Q& e) const;
    NcSeries truncated(int degree) const;
    NcSeries homogeneous(int k) const;

private:
    long p_;
    int level_;
    int degree_;
    int gens_;
    std::vector<size_t> offset_;
    std::vector<Q> c_;
};

std::string mono_name(const Mono& m);
Mono parse_mono(const std::string& s);

NcSeries embed_E(const FreeWord& w, int degree);
// X specialized to 0; x letters are dropped.
NcSeries embed_E0(const FreeWord& w, int degree);
NcSeries specialize_E0(const NcSeries& s);

NcSeries nc_log(const NcSeries& s);
NcSeries nc_exp(const NcSeries& s);

// Algebra map sending generator g to images[g] (zero constant terms).
NcSeries substitute(const NcSeries& s, const std::vector<NcSeries>& images);
NcSeries project_pr(const NcSeries& s, int target_level);

bool log_lie_check(const NcSeries& s);
bool shuffle_check(const NcSeries& s, const Mono& u, const Mono& v);
std::vector<std::pair<Mono, long>> shuffle_product(const Mono& u, const Mono& v);

struct Coefficients {
    const NcSeries& s;

    Q alpha(long i) const { return s.coeff({static_cast<int>(1 + i)}); }
    Q beta(long a, long b) const { return s.coeff({static_cast<int>(1 + a), static_cast<int>(1 + b)}); }
    Q gamma(long i) const { return s.coeff({0, static_cast<int>(1 + i)}); }
    Q lambda(const Mono& m) const { return s.coeff(m); }
};

// Level-n series of a word given at level ctx.n_max.
NcSeries level_series(const FreeWord& g, int n, int degree);
NcSeries level_series_E0(const FreeWord& g, int n, int degree);

LevelFamily beta_measures(const FreeWord& g, int r, const PrimeContext& ctx);
GradedSequence beta_sequence(const FreeWord& g, int degree, const PrimeContext& ctx);
AlphaGammaTables alpha_gamma_tables(const FreeWord& g, const PrimeContext& ctx);

struct WordShape {
    std::vector<int> n;  // n_0..n_r
    Point i;             // i_1..i_r

    Mono mono() const;
    int degree() const;
};

struct CongruenceReport {
    Q lambda;
    Q riemann;
    long achieved;   // vp(lambda - riemann), kInfinity if equal
    long guarantee;  // m - vp(prod n_k!) - vp(deg(w)!)
    bool pass;
};

CongruenceReport thm31_congruence(const FreeWord& g, const WordShape& shape, int n, int m, const PrimeContext& ctx);

CheckList prop72_roundtrip(const FreeWord& g, int r, int terms, const PrimeContext& ctx);

std::string nc_series_json(const NcSeries& s);

}  // namespace pam
