#pragma once

#include "pam/padic.hpp"
#include "pam/poly.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pam {

using Point = std::vector<long>;

// A distribution on (Z_p)^m stored as level tables for n = 0..n_max.
// Table n is indexed by a_1 + a_2 p^n + ... with 0 <= a_k < p^n.
class LevelFamily {
public:
    using LevelFn = std::function<Q(int n, const Point& a)>;

    LevelFamily(const PrimeContext& ctx, int dim, int n_max);

    static LevelFamily tabulate(const PrimeContext& ctx, int dim, int n_max, const LevelFn& fn);
    static LevelFamily tabulate(const PrimeContext& ctx, int dim, const LevelFn& fn) {
        return tabulate(ctx, dim, ctx.n_max, fn);
    }

    const PrimeContext& ctx() const { return ctx_; }
    int dim() const { return dim_; }
    int n_max() const { return n_max_; }
    long denom_bound() const { return denom_bound_; }

    long modulus(int n) const { return ctx_.pow(n); }
    size_t size(int n) const { return tables_.at(n).size(); }
    const std::vector<Q>& table(int n) const { return tables_.at(n); }

    const Q& at(int n, size_t idx) const { return tables_.at(n).at(idx); }
    // Coordinates are reduced mod p^n.
    const Q& value(int n, const Point& a) const { return tables_.at(n).at(encode(n, a)); }

    Point decode(int n, size_t idx) const;
    size_t encode(int n, const Point& a) const;

    // Copy with one stored value shifted by delta (negative controls).
    LevelFamily perturbed(int n, const Point& a, const Q& delta) const;

    bool operator==(const LevelFamily& o) const;

private:
    void refresh_denom_bound();

    PrimeContext ctx_;
    int dim_;
    int n_max_;
    long denom_bound_ = 0;
    std::vector<std::vector<Q>> tables_;
};

struct DistributionReport {
    bool pass = true;
    int n = -1;
    Point a;
    Q defect;

    std::string describe() const;
};

DistributionReport validate_distribution(const LevelFamily& mu);

LevelFamily linear_combine(const std::vector<Q>& coeffs, const std::vector<LevelFamily>& mus);
LevelFamily operator+(const LevelFamily& a, const LevelFamily& b);
LevelFamily operator-(const LevelFamily& a, const LevelFamily& b);
LevelFamily operator*(const Q& c, const LevelFamily& a);

// (T_c mu)(a) = mu(a - c).
LevelFamily translate(const LevelFamily& mu, const std::vector<Q>& c);
// m_d: (m_d mu)(x) = mu(d^{-1} x), i.e. the pushforward under x -> d x.
LevelFamily scale_action(const LevelFamily& mu, const Q& d);
// Pushforward under x_i -> eps_i x_i + c_i, without any global sign.
LevelFamily pushforward_affine(const LevelFamily& mu, const std::vector<int>& eps, const std::vector<Q>& shift);
// perm[i] is the position coordinate i is moved to. The sign flips act
// first, then the permutation, and the result is scaled by prod eps.
LevelFamily signed_perm_action(const LevelFamily& mu, const std::vector<int>& perm, const std::vector<int>& eps);
LevelFamily exterior_product(const LevelFamily& a, const LevelFamily& b);

// Swap of the two coordinates of a dim 2 family.
LevelFamily swap_coordinates(const LevelFamily& mu);

bool measures_equal(const LevelFamily& mu, const LevelFamily& nu, int n, long e);
// First (level, index) where the comparison fails, if any.
std::optional<std::pair<int, Point>> first_difference(const LevelFamily& mu, const LevelFamily& nu, int n, long e);

struct GradedSequence {
    std::vector<LevelFamily> entries;

    int degree() const { return static_cast<int>(entries.size()) - 1; }
};

GradedSequence unit_sequence(const PrimeContext& ctx, int n_max, int degree);
GradedSequence star_convolution(const GradedSequence& a, const GradedSequence& b);

struct BoxValue {
    Q value;
    long guarantee;  // kInfinity when exact
};

// Riemann sum of poly over base + p^n Z_p^r at level eval_level.
BoxValue box_integral(const LevelFamily& mu, const Point& base, int n, const MPoly& poly, int eval_level);

// Finite sum of point masses at integer points.
struct DiracCombination {
    int dim = 0;
    std::vector<std::pair<Point, Q>> atoms;

    LevelFamily to_family(const PrimeContext& ctx, int n_max) const;
    DiracCombination pushforward_affine(const std::vector<int>& eps, const std::vector<long>& shift) const;
    DiracCombination reflected() const { return pushforward_affine(std::vector<int>(dim, -1), Point(dim, 0)); }
    DiracCombination operator+(const DiracCombination& o) const;
};

// Exact integral over base + p^n Z_p^r; the base is reduced mod p^n.
BoxValue box_integral(const DiracCombination& mu, long p, const Point& base, int n, const MPoly& poly);

// Truncated power series in T_1..T_m, K terms per variable, with a
// congruence exponent recorded for every coefficient.
struct IwasawaPoly {
    int dim = 0;
    int terms = 0;
    long p = 0;
    std::vector<Q> coeffs;
    std::vector<long> guarantee;

    IwasawaPoly() = default;
    IwasawaPoly(int dim, int terms, long p);

    size_t index(const std::vector<int>& j) const;
    std::vector<int> exponent(size_t idx) const;
    size_t size() const { return coeffs.size(); }

    const Q& coeff(const std::vector<int>& j) const { return coeffs.at(index(j)); }
};

IwasawaPoly iwasawa_P(const LevelFamily& mu, int terms, int level);
// Moment route: coefficient of X^j is (1/j!) * integral of x^j.
IwasawaPoly transform_F(const LevelFamily& mu, int terms, int level);
// Substitution route: T_k = exp(X_k) - 1 in P.
IwasawaPoly transform_F_from_P(const IwasawaPoly& P);

// Replace each T_k by the univariate series subs[k] (zero constant term).
// Guarantees propagate as minima; the substituted series must be p-integral.
IwasawaPoly substitute_variables(const IwasawaPoly& P, const std::vector<std::vector<Q>>& subs);
// Multiply by prod_k f_k(T_k) for p-integral univariate f_k.
IwasawaPoly multiply_univariate(const IwasawaPoly& P, const std::vector<std::vector<Q>>& factors);
// Reorder variables: new variable perm[i] is old variable i.
IwasawaPoly permute_variables(const IwasawaPoly& P, const std::vector<int>& perm);

// Coefficients of (1+T)^c, K terms.
std::vector<Q> binomial_series(const Q& c, int terms);

std::string level_table_csv(const LevelFamily& mu);
std::string iwasawa_json(const IwasawaPoly& P);

}  // namespace pam
