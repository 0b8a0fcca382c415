"""Polynomials over the prime field GF(p) and their factorization.

Coefficients are ints in [0, p), ascending order, no trailing zeros.
Factorization runs squarefree decomposition, distinct-degree splitting and
Cantor-Zassenhaus equal-degree splitting (trace map in characteristic 2).
"""

import random
from collections import Counter

from .errors import ZeroModP


def trim(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out, p)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out, p)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def scale(c, a, p):
    return trim([c * x for x in a], p)


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r, p)
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        t = r[k] % p
        if not t:
            continue
        t = t * inv % p
        q[k - db] = t
        for j in range(db + 1):
            r[k - db + j] = (r[k - db + j] - t * b[j]) % p
    return trim(q, p), trim(r[:db], p)


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    return scale(pow(a[-1], p - 2, p), a, p)


def gcd(a, b, p):
    a, b = trim(a, p), trim(b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """(d, s, t) with s*a + t*b = d monic."""
    r0, r1 = trim(a, p), trim(b, p)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return scale(inv, r0, p), scale(inv, s0, p), scale(inv, t0, p)


def deriv(a, p):
    return trim([i * a[i] for i in range(1, len(a))], p)


def powmod(a, e, m, p):
    result = [1]
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return result


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _pth_root(a, p):
    # in GF(p), c^(1/p) = c, so only exponents shrink
    return [a[i] for i in range(0, len(a), p)]


def squarefree_factors(f, p):
    """Monic squarefree decomposition: list of (factor, multiplicity)."""
    f = monic(f, p)
    out = []
    i = 1
    c = gcd(f, deriv(f, p), p)
    w = divmod_(f, c, p)[0]
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w, c = y, divmod_(c, y, p)[0]
    if len(c) > 1:
        for g, m in squarefree_factors(_pth_root(c, p), p):
            out.append((g, m * p))
    merged = Counter()
    polys = {}
    for g, m in out:
        polys[tuple(g)] = g
        merged[(tuple(g), m)] += 1
    return [(polys[key], m) for (key, m) in merged]


def distinct_degree(f, p):
    """Split a monic squarefree f into (product of degree-d factors, d)."""
    out = []
    h = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        if p == 2:
            t = a
            acc = list(a)
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            g = gcd(f, acc, p)
        else:
            e = (p ** d - 1) // 2
            g = gcd(f, sub(powmod(a, e, f, p), [1], p), p)
        if 1 < len(g) < len(f):
            h = divmod_(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def factor(f, p, seed=0):
    """Monic irreducible factors of f mod p with multiplicities, sorted canonically.

    Returns (leading coefficient, [(factor, multiplicity), ...]).
    """
    f = trim(f, p)
    if not f:
        raise ZeroModP("polynomial vanishes modulo %d" % p)
    lc = f[-1]
    if len(f) == 1:
        return lc, []
    rng = random.Random(seed * 1000003 + p)
    out = []
    for g, m in squarefree_factors(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return lc, out


def factor_degrees(f, p):
    """Sorted multiset of (degree, multiplicity) of the irreducible factors of f mod p."""
    _, facs = factor(f, p)
    return sorted((len(g) - 1, m) for g, m in facs)


def is_irreducible(f, p):
    f = trim(f, p)
    n = len(f) - 1
    if n < 1:
        return False
    _, facs = factor(f, p)
    return len(facs) == 1 and facs[0][1] == 1


def roots(f, p):
    """Distinct roots of f in GF(p)."""
    _, facs = factor(f, p)
    out = []
    for g, _ in facs:
        if len(g) == 2:
            out.append((-g[0]) % p)
    return sorted(out)
