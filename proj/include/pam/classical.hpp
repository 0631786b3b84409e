#pragma once

#include "pam/measure.hpp"

#include <string>
#include <vector>

namespace pam {

LevelFamily make_dirac(const Point& a, const PrimeContext& ctx, int n_max);
inline LevelFamily make_dirac(const Point& a, const PrimeContext& ctx) { return make_dirac(a, ctx, ctx.n_max); }
// Point mass at a p-integral rational point.
LevelFamily make_dirac_at(const std::vector<Q>& a, const PrimeContext& ctx, int n_max);

// Level n: (c - r)/p^n + [1 <= i < r] with r the representative of c in [1, p^n].
LevelFamily make_M(const Q& c, const PrimeContext& ctx, int n_max);
inline LevelFamily make_M(const Q& c, const PrimeContext& ctx) { return make_M(c, ctx, ctx.n_max); }

// E^{(n)}(a) = a/p^n - c <c^{-1} a>_n / p^n + (c - 1)/2.
Q e1_value(const Q& c, long p, int n, long a);
LevelFamily make_E1(const Q& c, const PrimeContext& ctx, int n_max);
inline LevelFamily make_E1(const Q& c, const PrimeContext& ctx) { return make_E1(c, ctx, ctx.n_max); }

LevelFamily make_N2(const Q& c, const PrimeContext& ctx, int n_max);
inline LevelFamily make_N2(const Q& c, const PrimeContext& ctx) { return make_N2(c, ctx, ctx.n_max); }

// alpha[n][i] and gamma[n][i] for 0 <= n <= n_max, 0 <= i < p^n.
struct AlphaGammaTables {
    std::vector<std::vector<Q>> alpha;
    std::vector<std::vector<Q>> gamma;
};

LevelFamily make_D2(const AlphaGammaTables& src, const PrimeContext& ctx);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckList {
    std::vector<CheckLine> lines;

    void add(std::string name, bool pass, std::string detail = {}) {
        lines.push_back({std::move(name), pass, std::move(detail)});
    }
    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    const CheckLine* first_failure() const {
        for (const auto& l : lines)
            if (!l.pass) return &l;
        return nullptr;
    }
    void append(const CheckList& o) { lines.insert(lines.end(), o.lines.begin(), o.lines.end()); }
};

// Relations i, ii and iv between E_{1,c}, M(c), delta_0 and delta_c.
// Relation iv is checked for alpha = nu + (E_{1,c} + (1-c)/2 delta_0)/2,
// which satisfies alpha - alpha o (-1) = E_{1,c} + (1-c)/2 delta_0 for
// every even nu.
CheckList lemma82_suite(const Q& c, const PrimeContext& ctx, long e, const LevelFamily* even_nu = nullptr);

// alpha := nu + (E_{1,c} + (1-c)/2 delta_0)/2.
LevelFamily reflection_solution(const LevelFamily& even_nu, const Q& c);

enum class Variant { Printed, Corrected };

struct DefectValue {
    Q defect;
    long guarantee;
};

// LHS - RHS of the inversion formula for the coefficients of X^mu Y_i.
// Printed: the display as stated. Corrected: the right side with the
// sign that the proof's own steps produce,
//   -sum_{j<mu} C(mu,j) I_j - (-1)^mu S_Bernoulli.
DefectValue thm32_defect(const LevelFamily& beta1, const Q& c, int mu, long i, int n, int m,
                         Variant v = Variant::Corrected);
// mu = 1 case. Printed: +lambda_i and <c^{-1}(p^n - 1)>. Corrected:
// -lambda_i and <c^{-1}(p^n - i)>.
DefectValue cor33_defect(const LevelFamily& beta1, const Q& c, long i, int n, int m, Variant v = Variant::Corrected);

}  // namespace pam
