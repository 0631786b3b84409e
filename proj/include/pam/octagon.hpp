#pragma once

#include "pam/classical.hpp"
#include "pam/padic.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pam {

// Symbols over Z/p^n: t, alpha_i, gamma_i, beta_{a,b}.
class SymTable {
public:
    explicit SymTable(long N) : N_(N) {}

    long modulus() const { return N_; }
    int t() const { return 0; }
    int alpha(long i) const { return static_cast<int>(1 + mod(i, N_)); }
    int gamma(long i) const { return static_cast<int>(1 + N_ + mod(i, N_)); }
    int beta(long a, long b) const { return static_cast<int>(1 + 2 * N_ + mod(a, N_) * N_ + mod(b, N_)); }
    std::string name(int id) const;

private:
    long N_;
};

// Commutative polynomial in the symbols; monomials hold up to four symbols.
class SymPoly {
public:
    using Key = std::uint64_t;

    SymPoly() = default;
    SymPoly(const Q& c);
    SymPoly(int c) : SymPoly(Q(c)) {}
    static SymPoly symbol(int id);

    static std::vector<int> symbols_of(Key k);
    static Key key_of(std::vector<int> ids);

    const std::map<Key, Q>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(Key k, const Q& c);

    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator-(const SymPoly& o) const;
    SymPoly operator-() const;
    SymPoly operator*(const SymPoly& o) const;
    SymPoly& operator+=(const SymPoly& o);
    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const SymPoly& o) const { return !(*this == o); }

    bool contains(int id) const;
    // Substitutes symbol id by value everywhere.
    SymPoly substituted(int id, const SymPoly& value) const;
    SymPoly substituted(const std::map<int, SymPoly>& subs) const;
    // Evaluates with every symbol given a rational value.
    Q eval(const std::map<int, Q>& values) const;

    std::string str(const SymTable& tab) const;

private:
    std::map<Key, Q> terms_;
};

// Non-commutative series in X, Y_0..Y_{N-1} truncated past degree 2.
class SymSeries {
public:
    SymSeries(long p, int n);
    static SymSeries one(long p, int n);

    long p() const { return p_; }
    int level() const { return n_; }
    long N() const { return N_; }
    int gens() const { return static_cast<int>(N_ + 1); }
    size_t size() const { return c_.size(); }

    // gen 0 is X, gen 1 + i is Y_i (index reduced mod N).
    int Y(long i) const { return static_cast<int>(1 + mod(i, N_)); }
    size_t idx() const { return 0; }
    size_t idx(int g) const { return 1 + static_cast<size_t>(g); }
    size_t idx(int g, int h) const { return 1 + gens() + static_cast<size_t>(g) * gens() + static_cast<size_t>(h); }
    std::vector<int> mono(size_t idx) const;

    SymPoly& operator[](size_t i) { return c_[i]; }
    const SymPoly& operator[](size_t i) const { return c_[i]; }

    SymSeries operator+(const SymSeries& o) const;
    SymSeries operator-(const SymSeries& o) const;
    SymSeries operator*(const SymSeries& o) const;
    SymSeries operator*(const SymPoly& c) const;
    bool operator==(const SymSeries& o) const { return c_ == o.c_; }

    static SymSeries gen(long p, int n, int g);
    static SymSeries mono2(long p, int n, int g, int h);

private:
    long p_;
    int n_;
    long N_;
    std::vector<SymPoly> c_;
};

std::string sym_mono_name(const std::vector<int>& m);

// 1 - s1 - s2 + s1^2 for s = 1 + s1 + s2.
SymSeries series_inverse(const SymSeries& s);

// chi = s + p^n t
struct OctagonConfig {
    long p;
    int n;
    long s;

    long N() const;
    void validate() const;
};

SymPoly chi_poly(const OctagonConfig& cfg, const SymTable& tab);
// E_{1,chi}(a) at level n as a polynomial in t.
SymPoly e1_sym(const OctagonConfig& cfg, const SymTable& tab, long a);

// The nine displays A..J as printed.
SymSeries build_factor(char name, const OctagonConfig& cfg);
// The product J H G F E D C B A truncated past degree 2.
SymSeries octagon_product(const OctagonConfig& cfg);
// The same product with every factor from derived_factor.
SymSeries octagon_product_derived(const OctagonConfig& cfg);

// The generic group-like cocycle series with lambda_{XY_i} = -lambda_{Y_iX}.
SymSeries generic_cocycle(const OctagonConfig& cfg);
// Factor obtained by substituting the free-group words of the substitution
// lemmas into the generic cocycle (names B..J, A is the cocycle itself).
SymSeries derived_factor(char name, const OctagonConfig& cfg);

class RelationSet {
public:
    explicit RelationSet(SymTable tab) : tab_(tab) {}

    // Reduces r by the current map and pivots on the largest symbol that
    // occurs only linearly with a rational coefficient. Returns false if r
    // reduced to zero. Throws PadicError on a nonzero relation free of
    // alpha, beta, gamma.
    bool add(const SymPoly& r);
    SymPoly reduce(const SymPoly& q) const;

    const std::map<int, SymPoly>& substitution() const { return sub_; }
    const std::vector<SymPoly>& generators() const { return gens_; }
    const std::vector<SymPoly>& unpivoted() const { return unpivoted_; }
    size_t rank() const { return sub_.size(); }
    const SymTable& table() const { return tab_; }

private:
    SymTable tab_;
    std::map<int, SymPoly> sub_;
    std::vector<SymPoly> gens_;
    std::vector<SymPoly> unpivoted_;
};

std::vector<SymPoly> deg1_relations(const SymSeries& prod);
std::vector<SymPoly> w12_relation(const OctagonConfig& cfg);

struct SymmetryReport {
    OctagonConfig cfg;
    bool x_coeff_zero = false;
    size_t deg1_rank = 0;
    std::vector<std::string> leftover;  // deg-1 relations not killed by W12
    bool pass = false;
};

SymmetryReport prop85_check(const OctagonConfig& cfg);

struct Residual {
    long a;
    long b;
    SymPoly poly;
};

struct ResidualReport {
    OctagonConfig cfg;
    bool x_coeff_zero = false;
    size_t deg1_rank = 0;
    std::vector<Residual> residuals;
    // The printed display differs from the product by -T_chi(alpha)(a) M(chi)(b).
    bool printed_deviation_matches = false;
    size_t printed_nonzero = 0;
    // Only filled when s = 1: the chi = 1 display evaluated at t = 0.
    bool has_chi1 = false;
    std::vector<Residual> chi1_residuals;
    bool shuffle_needed = false;
    bool pass = false;
};

ResidualReport thm8x_check(const OctagonConfig& cfg);
std::string thm8_json(const ResidualReport& r);

struct FactorDiff {
    std::string mono;
    SymPoly derived;
    SymPoly display;
};

struct DeriveReport {
    char name;
    OctagonConfig cfg;
    std::vector<FactorDiff> diffs;
    bool pass() const { return diffs.empty(); }
};

DeriveReport derive_factor_by_subst(char name, const OctagonConfig& cfg);

// h_m = -(beta - beta o (-1) + T_c(beta o (-1)) - T_c(beta)).
LevelFamily prop86_defect(const LevelFamily& beta_m, const Q& c);

}  // namespace pam
