#include "pam/padic.hpp"

#include <mutex>

namespace pam {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

PrimeContext::PrimeContext(long p_, int n_max_, int prec_) : p(p_), n_max(n_max_), prec(prec_) {
    if (!is_prime(p)) throw PadicError("p = " + std::to_string(p) + " is not prime");
    if (n_max < 1) throw PadicError("n_max must be at least 1");
    if (prec < 1) throw PadicError("prec must be at least 1");
}

long PrimeContext::pow(int n) const {
    long r = 1;
    for (int i = 0; i < n; ++i) r *= p;
    return r;
}

Z PrimeContext::zpow(int n) const {
    Z r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    return r;
}

long vp(const Z& x, long p) {
    if (x == 0) return kInfinity;
    Z q = x;
    long v = 0;
    while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

long vp(const Q& x, long p) {
    if (x == 0) return kInfinity;
    return vp(Z(x.get_num()), p) - vp(Z(x.get_den()), p);
}

long vp_factorial(long k, long p) {
    long v = 0;
    for (long q = p; q <= k; q *= p) v += k / q;
    return v;
}

bool is_unit(const Q& x, long p) { return x != 0 && vp(x, p) == 0; }
bool is_integral(const Q& x, long p) { return x == 0 || vp(x, p) >= 0; }

Z repr_mod_z(const Q& c, const Z& modulus, long p) {
    Z den = c.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
        throw PadicError("repr_mod: " + to_string(c) + " is not p-integral for p = " + std::to_string(p));
    if (modulus == 1) return 0;
    Z inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    Z r = Z(c.get_num()) * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

long repr_mod(const Q& c, long p, int n) {
    Z m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    return repr_mod_z(c, m, p).get_si();
}

Q binom(const Q& c, long k) {
    Q r = 1;
    for (long j = 0; j < k; ++j) {
        r *= c - j;
        r /= j + 1;
    }
    return r;
}

Z factorial(long k) {
    Z r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

Q bernoulli(int k) {
    static std::mutex m;
    static std::vector<Q> cache{Q(1)};
    std::lock_guard<std::mutex> lock(m);
    while (static_cast<int>(cache.size()) <= k) {
        int kk = static_cast<int>(cache.size());
        Q s = 0;
        for (int j = 0; j < kk; ++j) {
            Z c;
            mpz_bin_uiui(c.get_mpz_t(), kk + 1, j);
            s += Q(c) * cache[j];
        }
        Q b = -s / (kk + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[k];
}

Q bernoulli_poly(int k, const Q& x) {
    Q r = 0;
    for (int j = 0; j <= k; ++j) {
        Z c;
        mpz_bin_uiui(c.get_mpz_t(), k, j);
        r += Q(c) * bernoulli(j) * qpow(x, k - j);
    }
    return r;
}

Q qpow(const Q& x, long k) {
    Q r = 1;
    for (long i = 0; i < k; ++i) r *= x;
    return r;
}

std::string to_string(const Q& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Q parse_rational(const std::string& s) {
    auto bad = [&] { return PadicError("malformed rational '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto check_int = [&](const std::string& part) {
        size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i >= part.size()) throw bad();
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') throw bad();
    };
    std::string num = s.substr(0, slash);
    if (!num.empty() && num[0] == '+') num = num.substr(1);
    check_int(num);
    Q r;
    if (slash == std::string::npos) {
        r = Q(Z(num));
    } else {
        std::string den = s.substr(slash + 1);
        check_int(den);
        Z d(den);
        if (d == 0) throw bad();
        r = Q(Z(num), d);
    }
    r.canonicalize();
    return r;
}

}  // namespace pam
