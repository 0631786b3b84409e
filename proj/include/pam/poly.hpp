#pragma once

#include "pam/padic.hpp"

#include <map>
#include <vector>

namespace pam {

// Commutative polynomial in x_1..x_r with rational coefficients.
class MPoly {
public:
    using Exponent = std::vector<int>;

    explicit MPoly(int nvars = 0) : nvars_(nvars) {}

    static MPoly constant(int nvars, const Q& c);
    static MPoly var(int nvars, int i);

    int nvars() const { return nvars_; }
    const std::map<Exponent, Q>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, const Q& c);

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Q& c) const;
    MPoly pow(int k) const;

    Q eval(const std::vector<Q>& x) const;
    Q eval(const std::vector<long>& x) const;

    // P(base + scale * y) as a polynomial in y.
    MPoly rescaled(const std::vector<Q>& base, const Q& scale) const;

    // Smallest p-valuation among the coefficients (kInfinity for 0).
    long min_vp(long p) const;

    bool operator==(const MPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

private:
    int nvars_;
    std::map<Exponent, Q> terms_;
};

}  // namespace pam
