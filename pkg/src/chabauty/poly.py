"""Rational and integer polynomial utilities.

Polynomials are ascending coefficient lists.  Functions accept ints or
Fractions; results over the rationals are lists of ``Fraction``.
"""

from fractions import Fraction
from math import gcd

from .fields import (QQ, padd, pderiv, pdivmod, peval, pgcd, pmul, prem,
                     presultant, psub, ptrim)


def to_q(a):
    return ptrim(QQ, [Fraction(c) for c in a])


def degree(a):
    a = to_q(a)
    return len(a) - 1


def is_integral(a):
    return all(Fraction(c).denominator == 1 for c in a)


def to_int(a):
    return [int(Fraction(c)) for c in ptrim(QQ, [Fraction(c) for c in a])]


def content(a):
    g = 0
    for c in a:
        g = gcd(g, int(c))
    return g


def primitive_part(a):
    """Integer primitive part with positive leading coefficient."""
    a = to_q(a)
    if not a:
        return []
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = content(ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def monic_q(a):
    a = to_q(a)
    lc = a[-1]
    return [c / lc for c in a]


def qmul(a, b):
    return pmul(QQ, to_q(a), to_q(b))


def qdivmod(a, b):
    return pdivmod(QQ, to_q(a), to_q(b))


def qgcd(a, b):
    return pgcd(QQ, to_q(a), to_q(b))


def qderiv(a):
    return pderiv(QQ, to_q(a))


def qeval(a, x):
    return peval(QQ, to_q(a), Fraction(x))


def resultant(a, b):
    return presultant(QQ, to_q(a), to_q(b))


def discriminant(a):
    """Discriminant (-1)^(n(n-1)/2) Res(a, a') / lc(a)."""
    a = to_q(a)
    n = len(a) - 1
    if n < 1:
        raise ValueError("discriminant of a constant")
    if n == 1:
        return Fraction(1)
    r = resultant(a, qderiv(a))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / a[-1]


def is_squarefree(a):
    a = to_q(a)
    return len(qgcd(a, qderiv(a))) == 1


def squarefree_decomposition(a):
    """Yun's algorithm: list of (factor, multiplicity) with monic rational factors."""
    a = monic_q(a)
    out = []
    da = qderiv(a)
    b = qgcd(a, da)
    c = qdivmod(a, b)[0]
    d = psub(QQ, qdivmod(da, b)[0], qderiv(c))
    i = 1
    while len(c) > 1:
        g = qgcd(c, d)
        if len(g) > 1:
            out.append((g, i))
        c = qdivmod(c, g)[0]
        d = psub(QQ, qdivmod(d, g)[0], qderiv(c))
        i += 1
    return out


def shift(a, c):
    """a(x + c)."""
    a = to_q(a)
    out = []
    for coeff in reversed(a):
        out = padd(QQ, pmul(QQ, out, [Fraction(c), Fraction(1)]), [coeff] if coeff else [])
    return out


# Sturm sequences

def sturm_sequence(a):
    a = to_q(a)
    seq = [a, qderiv(a)]
    while seq[-1] and len(seq[-1]) > 1:
        r = prem(QQ, seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if (x > 0) != (y > 0))


def _signs_at_infinity(seq, positive):
    out = []
    for s in seq:
        lc = s[-1]
        d = len(s) - 1
        if positive or d % 2 == 0:
            out.append(1 if lc > 0 else -1)
        else:
            out.append(-1 if lc > 0 else 1)
    return out


def count_real_roots(a):
    """Number of distinct real roots via the Sturm sign-variation count."""
    a = to_q(a)
    if len(a) <= 1:
        return 0
    seq = sturm_sequence(a)
    return _sign_changes(_signs_at_infinity(seq, False)) - _sign_changes(_signs_at_infinity(seq, True))


def count_roots_in(a, lo, hi):
    """Distinct real roots in the half-open interval (lo, hi]."""
    seq = sturm_sequence(a)
    lo, hi = Fraction(lo), Fraction(hi)
    v_lo = _sign_changes([peval(QQ, s, lo) for s in seq])
    v_hi = _sign_changes([peval(QQ, s, hi) for s in seq])
    return v_lo - v_hi


def cauchy_bound(a):
    """All complex roots have absolute value < this rational."""
    a = to_q(a)
    lc = abs(a[-1])
    return 1 + max((abs(c) / lc for c in a[:-1]), default=Fraction(0))


def isolate_real_roots(a):
    """Disjoint intervals (lo, hi] each holding exactly one real root."""
    a = to_q(a)
    if len(a) <= 1:
        return []
    b = cauchy_bound(a)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots_in(a, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def sub_poly(a, b):
    return psub(QQ, to_q(a), to_q(b))


def eval_int_mod(a, x, m):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


def poly_str(a, var="x"):
    a = to_q(a)
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            mono = str(c)
        else:
            x = var if i == 1 else "%s^%d" % (var, i)
            mono = x if c == 1 else ("-" + x if c == -1 else "%s*%s" % (c, x))
        terms.append(mono)
    return " + ".join(terms).replace("+ -", "- ")
