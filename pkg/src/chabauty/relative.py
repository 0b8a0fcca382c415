"""Polynomials over a number field: squarefreeness, factorization, residue counts."""

from fractions import Fraction

from . import cache, gfp
from .errors import IndexObstruction, RelativeFactorizationFailed, ShiftExhausted
from .fields import (QQ, FiniteField, pcompose, pderiv, pdivmod, pgcd, pmul,
                     ppowmod, psub, ptrim)
from .numfield import relative_poly, shifted_norm
from .zfactor import factor_z


def monic(base, f):
    K = base.arith
    f = relative_poly(base, f)
    inv = K.inv(f[-1])
    return [K.mul(inv, c) for c in f]


def is_squarefree(base, f):
    K = base.arith
    f = relative_poly(base, f)
    return len(pgcd(K, f, pderiv(K, f))) == 1


def gcd(base, f, g):
    return pgcd(base.arith, relative_poly(base, f), relative_poly(base, g))


def multiply(base, polys):
    K = base.arith
    out = [K.one]
    for f in polys:
        out = pmul(K, out, relative_poly(base, f))
    return out


def factor(base, f):
    """Monic irreducible factors over base of a squarefree polynomial f."""
    K = base.arith
    f = monic(base, f)
    if len(f) == 2:
        return [f]
    if base.degree == 1:
        _, facs = factor_z([c[0] for c in f])
        out = []
        for h, _ in facs:
            lc = Fraction(h[-1])
            out.append([K.coerce(Fraction(c) / lc) for c in h])
        return _sorted(out)
    theta = K.generator()
    for s in range(0, 33):
        N = shifted_norm(base, f, s)
        if len(pgcd(QQ, N, pderiv(QQ, N))) != 1:
            continue
        shifted = pcompose(K, f, [K.neg(K.mul(K.coerce(s), theta)), K.one])
        back = [K.mul(K.coerce(s), theta), K.one]
        _, facs = factor_z(N)
        out = []
        for h, _ in facs:
            hk = [K.coerce(c) for c in h]
            g = pgcd(K, shifted, hk)
            if len(g) < 2:
                raise RelativeFactorizationFailed("norm factor shares no factor with f")
            out.append(pcompose(K, g, back))
        if sum(len(g) - 1 for g in out) != len(f) - 1:
            raise RelativeFactorizationFailed("factor degrees do not add up")
        return _sorted(out)
    raise ShiftExhausted("no shift in [0, 32] gives a squarefree norm")


def _sorted(polys):
    return sorted(polys, key=lambda g: (len(g), [tuple(c) for c in g]))


def has_root(base, f):
    return any(len(g) == 2 for g in factor(base, f))


# reduction modulo a prime of the base

def primes_above(base, p):
    """Monic irreducible factors of the defining polynomial mod p (one per place)."""
    if base.poly_discriminant % p == 0:
        raise IndexObstruction("%d divides the discriminant of %s" % (p, base.label))
    key = {"poly": list(base.defining_poly), "p": p}
    return cache.lookup_or_compute(
        "residue_places", key,
        lambda: [g for g, _ in gfp.factor(list(base.defining_poly), p)[1]])


def residue_field(p, place_poly):
    return FiniteField(p, place_poly)


def reduce_element(F, value):
    """Image of a base element (rational coordinates) in the residue field F."""
    p = F.p
    coords = []
    for c in value:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise IndexObstruction("element is not integral at %d" % p)
        coords.append(c.numerator * pow(c.denominator, -1, p) % p)
    return F.reduce(coords)


def reduce_poly(F, f):
    return ptrim(F, [reduce_element(F, c) for c in f])


def count_irreducible_factors(F, h):
    """Number of irreducible factors of a monic squarefree h over the finite field F."""
    h = ptrim(F, h)
    count = 0
    x = [F.zero, F.one]
    X = x
    d = 0
    while len(h) - 1 >= 2 * (d + 1):
        d += 1
        X = ppowmod(F, X, F.order, h)
        g = pgcd(F, h, psub(F, X, x))
        if len(g) > 1:
            count += (len(g) - 1) // d
            h = pdivmod(F, h, g)[0]
            X = pdivmod(F, X, h)[1] if len(h) > 1 else []
    if len(h) > 1:
        count += 1
    return count


def is_squarefree_mod(F, h):
    return len(pgcd(F, h, _deriv(F, h))) == 1


def _deriv(F, h):
    return ptrim(F, [F.mul(F.coerce(i), h[i]) for i in range(1, len(h))])
