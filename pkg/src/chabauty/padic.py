"""Fixed-precision p-adic integers, logarithms of principal units and log matrices."""

from dataclasses import dataclass
from fractions import Fraction

from . import gfp
from .errors import (EvenPrimeUnsupported, GeneratorNotCoprime, IndexObstruction,
                     NonSplitCompletion, NotOneUnit, PrecisionExhausted)


def valuation(n, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PAdicInt:
    p: int
    N: int
    residue: int

    def __post_init__(self):
        if self.N < 1:
            raise PrecisionExhausted("precision must be positive, got %d" % self.N)
        object.__setattr__(self, "residue", self.residue % self.p ** self.N)

    @classmethod
    def of(cls, p, N, x):
        """Image of an integer or p-integral rational."""
        x = Fraction(x)
        if x.denominator % p == 0:
            raise GeneratorNotCoprime("%s is not p-integral for p = %d" % (x, p))
        m = p ** N
        return cls(p, N, x.numerator * pow(x.denominator, -1, m))

    @property
    def modulus(self):
        return self.p ** self.N

    def is_zero(self):
        return self.residue == 0

    def valuation(self):
        """Valuation, or N when the element is zero at this precision."""
        return self.N if self.residue == 0 else min(valuation(self.residue, self.p), self.N)

    def _check(self, other):
        if isinstance(other, int):
            return PAdicInt(self.p, self.N, other)
        if other.p != self.p:
            raise ValueError("mixed primes")
        return other

    def __add__(self, other):
        other = self._check(other)
        N = min(self.N, other.N)
        return PAdicInt(self.p, N, self.residue + other.residue)

    __radd__ = __add__

    def __neg__(self):
        return PAdicInt(self.p, self.N, -self.residue)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        N = min(self.N, other.N)
        return PAdicInt(self.p, N, self.residue * other.residue)

    __rmul__ = __mul__

    def __pow__(self, e):
        return PAdicInt(self.p, self.N, pow(self.residue, e, self.modulus))

    def divide_by(self, k):
        """Division by an integer; loses v_p(k) digits of precision."""
        v = valuation(k, self.p)
        if self.residue % self.p ** v:
            raise PrecisionExhausted("%d does not divide the element" % k)
        N = self.N - v
        unit = k // self.p ** v
        m = self.p ** N
        return PAdicInt(self.p, N, (self.residue // self.p ** v) * pow(unit, -1, m))

    def reduce(self, N):
        if N > self.N:
            raise PrecisionExhausted("cannot raise precision from %d to %d" % (self.N, N))
        return PAdicInt(self.p, N, self.residue)


def padic_log(x, N=None):
    """log of a principal unit as a PAdicInt at precision N.

    Each term z^k / k is formed from z^k modulo p^(N + v_p(k)) before the
    division, so no digits are lost; summation stops at the first k with
    k * v_p(z) - floor(log_p k) >= N, beyond which every term vanishes mod p^N.
    """
    p = x.p
    N = x.N if N is None else N
    if p == 2:
        raise EvenPrimeUnsupported("the logarithm is only implemented for odd p")
    if N > x.N:
        raise PrecisionExhausted("input known only to precision %d" % x.N)
    z = (x.residue - 1) % p ** x.N
    if z % p:
        raise NotOneUnit("%d is not congruent to 1 mod %d" % (x.residue, p))
    if z == 0:
        return PAdicInt(p, N, 0)
    v = valuation(z, p)
    m = p ** N
    total = 0
    k = 1
    while k * v - _floor_log(k, p) < N:
        e = valuation(k, p)
        num = pow(z, k, p ** (N + e))
        term = (num // p ** e) * pow(k // p ** e, -1, m)
        total += term if k % 2 else -term
        k += 1
    return PAdicInt(p, N, total)


def _floor_log(k, p):
    out = 0
    while k >= p:
        k //= p
        out += 1
    return out


def log_unit(u, p, N):
    """log(u^(p-1)) / (p-1) for a p-adic unit u (integer or Fraction)."""
    u = Fraction(u)
    if u == 0 or valuation(u, p) != 0:
        raise GeneratorNotCoprime("%s is not a p-adic unit for p = %d" % (u, p))
    x = PAdicInt.of(p, N, u) ** (p - 1)
    return padic_log(x).divide_by(p - 1)


@dataclass(frozen=True)
class LogVector:
    coordinates: tuple
    provenance: str

    def __post_init__(self):
        keys = {(c.p, c.N) for c in self.coordinates}
        if len(keys) > 1:
            raise ValueError("log vector coordinates must share (p, N)")


def hensel_roots(f, p, N):
    """Roots in Z/p^N of an integer polynomial whose reduction splits into simple roots."""
    g = [c % p for c in f]
    if len(gfp.trim(g, p)) - 1 != len(f) - 1:
        raise IndexObstruction("leading coefficient vanishes mod %d" % p)
    if any(d > 1 for d, _ in gfp.factor_degrees(g, p)):
        raise NonSplitCompletion("a completion above %d has degree > 1" % p)
    roots = gfp.roots(g, p)
    if len(roots) != len(f) - 1:
        raise IndexObstruction("repeated root mod %d" % p)
    df = [i * f[i] for i in range(1, len(f))]
    out = []
    m = p ** N
    for r in roots:
        x = r
        prec = 1
        while prec < N:
            prec = min(2 * prec, N)
            mod = p ** prec
            fx = sum(c * pow(x, i, mod) for i, c in enumerate(f)) % mod
            dfx = sum(c * pow(x, i, mod) for i, c in enumerate(df)) % mod
            x = (x - fx * pow(dfx, -1, mod)) % mod
        out.append(x % m)
    return out


def unit_log_matrix(generators, p, N, field=None):
    """Rows of logs of each generator in every completion of the field above p.

    field None means Q.  Otherwise generators are power-basis coordinate lists
    and every prime above p must have degree one.
    """
    if p == 2:
        raise EvenPrimeUnsupported("p = 2 is not supported")
    if field is None or field.degree == 1:
        embeddings = [lambda g: Fraction(g[0] if isinstance(g, (list, tuple)) else g)]
    else:
        f = [int(c) for c in field.defining_poly]
        embeddings = [_evaluator(r, p, N) for r in hensel_roots(f, p, N)]
    rows = []
    for g in generators:
        coords = tuple(log_unit(e(g), p, N) for e in embeddings)
        rows.append(LogVector(coords, "log of %s" % (g,)))
    return rows


def _evaluator(root, p, N):
    m = p ** N

    def ev(coords):
        total = 0
        for i, c in enumerate(coords):
            c = Fraction(c)
            if c.denominator % p == 0:
                raise GeneratorNotCoprime("coordinate %s is not p-integral" % c)
            total += c.numerator * pow(c.denominator, -1, m) * pow(root, i, m)
        return Fraction(total % m)
    return ev


def closure_dimension(M, p, N, strict=False):
    """Rank of a log matrix over Z_p at precision N, with a certification flag.

    Elimination always pivots on an entry of least valuation.  The estimate is
    certified when every pivot valuation is below N/2.  With strict set an
    uncertified estimate raises PrecisionExhausted.
    """
    rows = [_row_residues(r, p, N) for r in M]
    if not rows:
        raise ValueError("empty log matrix")
    m = p ** N
    pivots = []
    active = [list(r) for r in rows]
    while active:
        best = None
        for i, r in enumerate(active):
            for j, a in enumerate(r):
                if a % m:
                    v = valuation(a % m, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        pivot_row = active.pop(i)
        pv = pivot_row[j] % m
        unit_inv = pow(pv // p ** v, -1, m)
        for r in active:
            c = ((r[j] % m) // p ** v) * unit_inv % m
            for k in range(len(r)):
                r[k] = (r[k] - c * pivot_row[k]) % m
        pivots.append(v)
    certified = all(2 * v < N for v in pivots)
    if strict and not certified:
        raise PrecisionExhausted("pivot valuations %s reach half the precision %d" % (pivots, N))
    return len(pivots), certified


def _row_residues(row, p, N):
    coords = row.coordinates if isinstance(row, LogVector) else row
    out = []
    for c in coords:
        if isinstance(c, PAdicInt):
            if c.p != p or c.N < N:
                raise PrecisionExhausted("entry known to precision %d < %d" % (c.N, N))
            out.append(c.residue % p ** N)
        else:
            out.append(int(c) % p ** N)
    return out
