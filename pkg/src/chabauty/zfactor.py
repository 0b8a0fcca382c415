"""Factorization of integer polynomials (Zassenhaus: mod-p, Hensel, recombination).

Sized for the small degrees used here (up to a few dozen); recombination is
the exhaustive subset search, pruned by a degree-compatibility sieve over
several primes.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import isqrt

from . import gfp
from .poly import content, primitive_part, squarefree_decomposition


def _primes():
    n = 2
    while True:
        if all(n % d for d in range(2, isqrt(n) + 1)):
            yield n
        n += 1


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zdivides(f, g):
    """Exact division f / g over Z, or None."""
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return None
    q = [0] * (len(f) - dg)
    lc = g[-1]
    for k in range(len(f) - 1, dg - 1, -1):
        t = f[k]
        if t % lc:
            return None
        t //= lc
        q[k - dg] = t
        if t:
            for j in range(dg + 1):
                f[k - dg + j] -= t * g[j]
    if any(f[:dg]):
        return None
    return q


def _sym(a, m):
    h = m // 2
    out = [((c % m) - m if (c % m) > h else c % m) for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def _mignotte(f):
    n = len(f) - 1
    norm = isqrt(sum(c * c for c in f)) + 1
    return (2 ** n) * norm * abs(f[-1])


def _hensel_pair(f, u, v, p, k):
    """Lift f = u*v (mod p) to mod p^k with v monic and lc(u) = lc(f)."""
    _, s, t = gfp.xgcd(u, v, p)
    u = list(u)
    u[-1] = f[-1]
    v = list(v)
    m = p
    for _ in range(k - 1):
        uv = _zmul(u, v)
        diff = [(f[i] if i < len(f) else 0) - (uv[i] if i < len(uv) else 0)
                for i in range(max(len(f), len(uv)))]
        e = gfp.trim([c // m for c in diff], p)
        if e:
            q, dv = gfp.divmod_(gfp.mul(e, s, p), v, p)
            du = gfp.add(gfp.mul(e, t, p), gfp.mul(q, u, p), p)
            for i, c in enumerate(du):
                u[i] += m * c
            for i, c in enumerate(dv):
                v[i] += m * c
        m *= p
    return [c % m for c in u], [c % m for c in v]


def _hensel_multi(f, factors, p, k):
    """Lift monic factors of f mod p (f = lc * prod) to monic factors mod p^k."""
    m = p ** k
    if len(factors) == 1:
        inv = pow(f[-1], -1, m)
        return [[c * inv % m for c in f]]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    u = [f[-1] % p]
    for g in left:
        u = gfp.mul(u, g, p)
    v = [1]
    for g in right:
        v = gfp.mul(v, g, p)
    U, V = _hensel_pair(f, u, v, p, k)
    return _hensel_multi(U, left, p, k) + _hensel_multi(V, right, p, k)


def _choose_prime(f, tries=6):
    best = None
    degree_sets = []
    lc = f[-1]
    count = 0
    for p in _primes():
        if lc % p == 0:
            continue
        fp = gfp.trim(f, p)
        if len(fp) != len(f):
            continue
        if len(gfp.gcd(fp, gfp.deriv(fp, p), p)) > 1:
            continue
        _, facs = gfp.factor(fp, p)
        degs = [len(g) - 1 for g, _ in facs]
        sums = {0}
        for d in degs:
            sums |= {s + d for s in sums}
        degree_sets.append(sums)
        if best is None or len(facs) < len(best[1]):
            best = (p, [g for g, _ in facs])
        count += 1
        if count >= tries or len(facs) == 1:
            break
    allowed = set.intersection(*degree_sets)
    return best[0], best[1], allowed


def _factor_squarefree(f):
    """Irreducible factors of a primitive squarefree integer polynomial with lc > 0."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    p, mods, allowed = _choose_prime(f)
    if allowed == {0, n} or len(mods) == 1:
        return [f]
    bound = 2 * _mignotte(f) + 1
    k = 1
    while p ** k < bound:
        k += 1
    m = p ** k
    lifted = _hensel_multi(f, mods, p, k)
    out = []
    remaining = list(range(len(lifted)))
    g = list(f)
    s = 1
    while 2 * s <= len(remaining):
        found = False
        for combo in combinations(remaining, s):
            d = sum(len(lifted[i]) - 1 for i in combo)
            if d not in allowed:
                continue
            cand = [g[-1]]
            for i in combo:
                cand = [c % m for c in _zmul(cand, lifted[i])]
            cand = _sym(cand, m)
            cand = primitive_part(cand)
            q = _zdivides(g, cand)
            if q is not None:
                out.append(cand)
                g = q
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
        if not found:
            s += 1
    out.append(primitive_part(g))
    return out


@lru_cache(maxsize=4096)
def _factor_cached(coeffs):
    f = list(coeffs)
    out = []
    for g, mult in squarefree_decomposition(f):
        pp = primitive_part(g)
        for h in _factor_squarefree(pp):
            out.append((tuple(h), mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return tuple(out)


def factor_z(f):
    """Factor a nonzero rational polynomial into primitive integer irreducibles.

    Returns (unit, [(factor, multiplicity), ...]) where unit is a Fraction and the
    factors have positive leading coefficient.
    """
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) == 1:
        return f[0], []
    facs = [(list(h), m) for h, m in _factor_cached(tuple(f))]
    lead = Fraction(1)
    for h, m in facs:
        lead *= Fraction(h[-1]) ** m
    unit = f[-1] / lead
    return unit, facs


def is_irreducible_q(f):
    _, facs = factor_z(f)
    return len(facs) == 1 and facs[0][1] == 1


def has_content_one(f):
    return content(f) == 1
