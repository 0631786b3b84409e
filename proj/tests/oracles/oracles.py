"""Independent reference values frozen into the C++ tests.

Uses only fractions/sympy; shares no code with the library.
Run: python3 tests/oracles/oracles.py
"""
from fractions import Fraction as F
from itertools import product
import sympy as sp


def repr_mod(c, p, n):
    m = p**n
    c = F(c)
    return (c.numerator * pow(c.denominator, -1, m)) % m


def binom(c, k):
    r = F(1)
    for j in range(k):
        r *= (F(c) - j) / (j + 1)
    return r


def M_table(c, p, n):
    m = p**n
    r = repr_mod(c, p, n) or m
    return [(F(c) - r) / m + (1 if 1 <= i < r else 0) for i in range(m)]


def E1_table(c, p, n):
    m = p**n
    c = F(c)
    return [F(a, m) - c * F(repr_mod(F(a) / c, p, n), m) + (c - 1) / 2 for a in range(m)]


def nc_exp(gen, sign, deg):
    # exp(sign * gen) truncated as dict word -> coeff
    out = {(): F(1)}
    term = {(): F(1)}
    for k in range(1, deg + 1):
        term = {w + (gen,): c * sign / k for w, c in term.items()}
        for w, c in term.items():
            out[w] = out.get(w, 0) + c
    return out


def nc_mul(a, b, deg):
    out = {}
    for u, x in a.items():
        for v, y in b.items():
            if len(u) + len(v) <= deg:
                out[u + v] = out.get(u + v, 0) + x * y
    return {k: v for k, v in out.items() if v != 0}


def word_series(letters, deg):
    s = {(): F(1)}
    for g, e in letters:
        s = nc_mul(s, nc_exp(g, e, deg), deg)
    return s


def commutator(a, b):
    inv = lambda w: [(g, -e) for g, e in reversed(w)]
    return a + b + inv(a) + inv(b)


def main():
    print("repr_mod(1/2,3,2) =", repr_mod(F(1, 2), 3, 2))
    print("binom(1/2,2) =", binom(F(1, 2), 2))
    print("bernoulli:", [sp.bernoulli(k) if k != 1 else sp.Rational(-1, 2) for k in range(9)])
    print("M(-1) p=3 n=1:", M_table(-1, 3, 1))
    print("M(7) p=3 n=2:", M_table(7, 3, 2))
    print("M(1/2) p=3 n=2:", M_table(F(1, 2), 3, 2))
    print("E1(-23) p=5 n=1:", E1_table(-23, 5, 1))
    print("E1(2) p=5 n=2 mass:", sum(E1_table(2, 5, 2)))
    print("E1(7) p=3 n=2:", E1_table(7, 3, 2))
    print("P(M(7)) coeffs:", [binom(7, k + 1) - (1 if k == 0 else 0) for k in range(6)])
    print("P(M(-2)) coeffs:", [binom(-2, k + 1) - (1 if k == 0 else 0) for k in range(6)])
    for c in (2, 7):
        print(f"E1({c}) moments:", [F(sp.Rational(-1, 2) if k == 1 else sp.bernoulli(k)) / k * (1 - F(c)**k) for k in range(1, 7)])
    # words: generator 0 = X, 1 + i = Y_i
    y0, y1, x = [(1, 1)], [(2, 1)], [(0, 1)]
    s = word_series(commutator(y0, y1), 3)
    print("E([y0,y1]) deg<=3:", sorted((k, str(v)) for k, v in s.items()))
    s = word_series(commutator(x, y0), 3)
    print("E([x,y0]) deg<=3:", sorted((k, str(v)) for k, v in s.items()))
    # e1 over the symbol t at (p,n,s) = (3,1,2)
    t = sp.symbols("t")
    chi = 2 + 3 * t
    for a in range(3):
        r = (pow(2, -1, 3) * a) % 3
        print(f"E1_chi({a}) (3,1,2) =", sp.expand(sp.Rational(a, 3) - chi * sp.Rational(r, 3) + (chi - 1) / 2))
    # signed group sum on delta_(0,0): sum of prod(eps) over eps
    print("sign character sum:", sum(e1 * e2 for e1, e2 in product((1, -1), repeat=2)) * 2)
    # prop86 defect, beta=delta_1, c=1, p=3, level 1
    def dirac(a, m=3):
        return [F(1 if i == a % m else 0) for i in range(m)]
    b = dirac(1); bm = dirac(-1); Tbm = dirac(-1 + 1); Tb = dirac(1 + 1)
    print("prop86 h:", [-(b[i] - bm[i] + Tbm[i] - Tb[i]) for i in range(3)])


main()
