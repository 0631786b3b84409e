#pragma once

#include <gmpxx.h>

#include <climits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pam {

using Q = mpq_class;
using Z = mpz_class;

// Valuation of zero.
inline constexpr long kInfinity = LONG_MAX;

class PadicError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PrimeContext {
    long p;
    int n_max;
    int prec;

    PrimeContext(long p, int n_max, int prec = 1);

    // p^n as a machine integer; levels are small enough for this.
    long pow(int n) const;
    Z zpow(int n) const;

    bool operator==(const PrimeContext& o) const { return p == o.p && n_max == o.n_max; }
    bool operator!=(const PrimeContext& o) const { return !(*this == o); }
};

bool is_prime(long p);

long vp(const Z& x, long p);
long vp(const Q& x, long p);
long vp_factorial(long k, long p);

bool is_unit(const Q& x, long p);
bool is_integral(const Q& x, long p);

// <c>_n in [0, p^n); the denominator is inverted mod p^n.
long repr_mod(const Q& c, long p, int n);
Z repr_mod_z(const Q& c, const Z& modulus, long p);

// Reduction of a (possibly negative) integer into [0, m).
inline long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// a/b in lowest terms; mpq_class(a, b) does not reduce.
inline Q frac(long a, long b) {
    Q q(a, b);
    q.canonicalize();
    return q;
}

Q binom(const Q& c, long k);
Z factorial(long k);

Q bernoulli(int k);
Q bernoulli_poly(int k, const Q& x);

Q qpow(const Q& x, long k);

std::string to_string(const Q& x);
// Accepts "n", "-n", "n/d".
Q parse_rational(const std::string& s);

}  // namespace pam
