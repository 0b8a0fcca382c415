"""Punctured genus-0 curves, their puncture orbits and generalized Jacobians.

A curve is the projective line over a base field with a Galois-stable set of
points removed.  The removed points split into orbits; each finite orbit is
an irreducible factor of the divisor polynomial over the base and has a
residue field built as an absolute number field.  The point at infinity is a
separate degree-1 orbit.

The Jacobian torus is (prod Res_{L_i/K} G_m) / G_m.  Its dimension is the
geometric puncture count minus one and its S-integral rank is computed two
ways: from Dirichlet S-unit ranks of the residue fields, and from orbit
counts of the decomposition groups at each place in S and at infinity.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from . import relative
from .errors import (IndexObstruction, NotAnSUnit, NotSquarefree, QNotPrime,
                     RelativeFactorizationFailed, ShiftExhausted)
from .fields import QQ, pdivmod
from .numfield import (NumberField, SSpec, absolute_field, is_prime, norm,
                       relative_poly, s_unit_rank, splitting_profile, sspec)
from .poly import poly_str


@dataclass(frozen=True)
class PunctureOrbit:
    relative_poly: tuple        # base elements, ascending; empty for the point at infinity
    residue_field: NumberField
    degree: int

    @property
    def at_infinity(self):
        return not self.relative_poly

    def label(self):
        if self.at_infinity:
            return "inf"
        return poly_str_over(self.relative_poly)

    def key(self):
        return (self.degree, tuple(tuple(str(x) for x in c) for c in self.relative_poly))


def poly_str_over(f):
    """Readable form of a polynomial whose coefficients are base elements."""
    if all(all(x == 0 for x in c[1:]) for c in f):
        return poly_str([c[0] for c in f])
    terms = []
    for i, c in enumerate(f):
        if any(c):
            inner = poly_str(list(c), "a")
            terms.append("(%s)%s" % (inner, "" if i == 0 else "*x" if i == 1 else "*x^%d" % i))
    return " + ".join(terms)


def infinity_orbit(base):
    return PunctureOrbit((), base, 1)


@dataclass(frozen=True)
class PuncturedCurve:
    base: NumberField
    s_spec: SSpec
    orbits: tuple
    label: str = ""
    shape: str = ""
    notes: tuple = ()

    def __post_init__(self):
        if not self.orbits:
            raise ValueError("a punctured curve needs at least one orbit")
        if self.puncture_count() < 2:
            raise ValueError("a punctured curve needs at least two geometric punctures")
        if sum(1 for o in self.orbits if o.at_infinity) > 1:
            raise ValueError("the point at infinity can be removed only once")
        finite = [list(o.relative_poly) for o in self.orbits if not o.at_infinity]
        for i, f in enumerate(finite):
            if not relative.is_squarefree(self.base, f):
                raise NotSquarefree("orbit polynomial %d is not squarefree" % i)
            for g in finite[i + 1:]:
                if len(relative.gcd(self.base, f, g)) > 1:
                    raise NotSquarefree("orbit polynomials share a root")

    def puncture_count(self):
        return sum(o.degree for o in self.orbits)

    def has_infinity(self):
        return any(o.at_infinity for o in self.orbits)

    def finite_orbits(self):
        return [o for o in self.orbits if not o.at_infinity]

    def divisor(self):
        """Product of the finite orbit polynomials."""
        return relative.multiply(self.base, [list(o.relative_poly) for o in self.finite_orbits()])

    def key(self):
        return (self.base.key(), tuple(self.s_spec.sorted()),
                tuple(sorted(o.key() for o in self.orbits)))


@dataclass(frozen=True)
class GenJacobianProfile:
    dim: int
    rank: int
    per_orbit: tuple = ()
    place_counts: tuple = ()

    def to_dict(self):
        out = {"dim": self.dim, "rank": self.rank}
        if self.per_orbit:
            out["orbits"] = [entry for _, entry in self.per_orbit]
        if self.place_counts:
            out["place_counts"] = [dict(pc) for pc in self.place_counts]
        return out


# orbits

def puncture_orbits(base, divisor_poly, include_infinity=True):
    """Split a squarefree divisor polynomial over base into Galois orbits."""
    f = relative_poly(base, divisor_poly)
    out = []
    if len(f) > 1:
        if not relative.is_squarefree(base, f):
            raise NotSquarefree("divisor polynomial is not squarefree over %s" % base.label)
        try:
            factors = relative.factor(base, f)
        except ShiftExhausted as exc:
            raise RelativeFactorizationFailed(str(exc)) from exc
        if relative.monic(base, f) != relative.multiply(base, factors):
            raise RelativeFactorizationFailed("factors do not multiply back to the divisor")
        for g in factors:
            out.append(_orbit(base, g))
    elif len(f) == 0:
        raise NotSquarefree("the zero polynomial is not a divisor")
    if include_infinity:
        out.append(infinity_orbit(base))
    return out


def _orbit(base, g):
    g = tuple(tuple(c) for c in g)
    deg = len(g) - 1
    if deg == 1:
        return PunctureOrbit(g, base, 1)
    return PunctureOrbit(g, absolute_field(base, [list(c) for c in g]), deg)


def make_curve(base, s_spec, divisor_poly, include_infinity=True, label="", shape="", notes=()):
    orbits = tuple(sorted(puncture_orbits(base, divisor_poly, include_infinity), key=PunctureOrbit.key))
    if not isinstance(s_spec, SSpec):
        s_spec = sspec(s_spec)
    return PuncturedCurve(base, s_spec, orbits, label or _default_label(base, orbits), shape, tuple(notes))


def curve_from_points(base, s_spec, points, include_infinity=True, label=""):
    """Curve with the given base-rational points (and optionally infinity) removed."""
    K = base.arith
    f = [K.one]
    for a in points:
        f = _mul_linear(K, f, K.coerce(a))
    return make_curve(base, s_spec, f, include_infinity, label)


def _mul_linear(K, f, a):
    out = [K.zero] + list(f)
    for i, c in enumerate(f):
        out[i] = K.sub(out[i], K.mul(a, c))
    return out


def _default_label(base, orbits):
    inner = ", ".join(o.label() for o in orbits)
    return "P1/%s minus {%s}" % (base.label, inner)


# profiles

def jacobian_profile(curve):
    """Dimension and S-integral rank from residue-field S-unit ranks."""
    S0 = curve.s_spec.sorted()
    entries = []
    total = 0
    for o in curve.orbits:
        L = o.residue_field
        r = s_unit_rank(L, S0)
        total += r
        entries.append((o, {
            "degree": o.degree,
            "residue_field": L.label,
            "residue_signature": list(L.signature),
            "places_above_S": sum(splitting_profile(L, p).places for p in S0),
            "s_unit_rank": r,
        }))
    rank = total - s_unit_rank(curve.base, S0)
    return GenJacobianProfile(curve.puncture_count() - 1, rank, tuple(entries))


def jacobian_profile_orbit_form(curve):
    """Dimension and rank from orbit counts of decomposition groups.

    Finite places: each place of the base above S0 is a factor of the
    defining polynomial mod p; the orbits of its decomposition group on an
    orbit's roots are the irreducible factors of the reduced orbit polynomial
    over the residue field.  Infinite places: the archimedean places of each
    residue field lying above real (resp. complex) places of the base.
    """
    base = curve.base
    c = len(curve.orbits)
    counts = []
    total = 0
    for p in curve.s_spec.sorted():
        for idx, place in enumerate(relative.primes_above(base, p)):
            F = relative.residue_field(p, place)
            n = 0
            for o in curve.orbits:
                if o.at_infinity:
                    n += 1
                    continue
                h = relative.reduce_poly(F, o.relative_poly)
                if len(h) != len(o.relative_poly) or not relative.is_squarefree_mod(F, h):
                    raise IndexObstruction("orbit polynomial %s is not separable at %d"
                                           % (o.label(), p))
                n += relative.count_irreducible_factors(F, h)
            counts.append((("place", "%d:%d" % (p, idx)), ("residue_degree", len(place) - 1),
                           ("orbits", n)))
            total += n - 1
    r1, r2 = base.signature
    if r1:
        real = sum((o.residue_field.r1 + o.residue_field.r2) - r2 * o.degree for o in curve.orbits)
        counts.append((("place", "real"), ("count", r1), ("orbits", real)))
        total += real - r1
    if r2:
        cplx = sum(o.degree for o in curve.orbits)
        counts.append((("place", "complex"), ("count", r2), ("orbits", cplx)))
        total += r2 * (cplx - 1)
    rank = total - (c - 1)
    return GenJacobianProfile(curve.puncture_count() - 1, rank, (), tuple(counts))


# X_{alpha, q}

_TERM = re.compile(r"^([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(a(?:\^(\d+))?)?$")


def parse_element(base, value):
    """Coerce an int, rational, coefficient list or text into a base element.

    Text may be a rational ("3", "-1/2"), a bracketed coefficient list
    ("[1,2]" meaning 1 + 2a) or a polynomial in the generator a ("1+2*a^2").
    """
    K = base.arith
    if isinstance(value, (int, Fraction)):
        return K.coerce(value)
    if isinstance(value, (list, tuple)):
        return K.coerce([Fraction(c) for c in value])
    text = str(value).replace(" ", "")
    if text.startswith("["):
        return K.coerce([Fraction(c) for c in text.strip("[]").split(",") if c])
    coeffs = {}
    for term in re.findall(r"[+-]?[^+-]+", text):
        m = _TERM.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError("cannot parse element %r" % (value,))
        sign = -1 if m.group(1) == "-" else 1
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        k = 0 if m.group(3) is None else int(m.group(4) or 1)
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
    vec = [coeffs.get(i, Fraction(0)) for i in range(max(coeffs) + 1)] if coeffs else [0]
    return K.coerce(vec)


def _support(n):
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def norm_support(base, alpha):
    """Primes dividing the numerator or denominator of the norm of alpha."""
    N = norm(base, alpha)
    if N == 0:
        return None
    return _support(N.numerator) | _support(N.denominator)


def is_s_unit(base, s_spec, alpha):
    """Necessary test: the norm of alpha is supported on S0."""
    sup = norm_support(base, alpha)
    return sup is not None and sup <= set(s_spec.rational_primes)


def _int_root(n, q):
    if n < 0:
        if q % 2 == 0:
            return None
        r = _int_root(-n, q)
        return None if r is None else -r
    lo, hi = 0, 1
    while hi ** q <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** q <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** q == n else None


def qth_root(base, alpha, q):
    """A qth root of alpha in base, or None."""
    K = base.arith
    alpha = K.coerce(alpha)
    if base.degree == 1:
        a = alpha[0]
        num, den = _int_root(a.numerator, q), _int_root(a.denominator, q)
        if num is None or den is None:
            return None
        return K.coerce(Fraction(num, den))
    f = [K.neg(alpha)] + [K.zero] * (q - 1) + [K.one]
    for g in relative.factor(base, f):
        if len(g) == 2:
            return K.neg(g[0])
    return None


def is_qth_power(base, alpha, q):
    return qth_root(base, alpha, q) is not None


def build_x_alpha_q(base, s_spec, alpha, q, strict=False):
    """The curve P1 minus the qth roots of alpha (or of 1, minus 1 itself).

    When alpha is a qth power the curve is X_{1,q}: punctures at the
    nontrivial qth roots of unity.  Otherwise it is X_{alpha,q}: punctures at
    the roots of x^q - alpha.  If alpha's norm is not supported on S0 the
    curve is still built with a note, unless strict is set.
    """
    if not is_prime(q):
        raise QNotPrime("%r is not prime" % (q,))
    if not isinstance(s_spec, SSpec):
        s_spec = sspec(s_spec)
    K = base.arith
    a = parse_element(base, alpha)
    if K.is_zero(a):
        raise NotAnSUnit("0 is not an S-unit")
    notes = []
    if not is_s_unit(base, s_spec, a):
        if strict:
            raise NotAnSUnit("norm of alpha is not supported on S0 = %s" % (s_spec.sorted(),))
        notes.append("AlphaNotSUnit")
    if is_qth_power(base, a, q):
        f = [K.one] * q
        shape = "X_{1,%d}" % q
    else:
        f = [K.neg(a)] + [K.zero] * (q - 1) + [K.one]
        shape = "X_{%s,%d}" % (_alpha_text(a), q)
    label = "%s over %s, S0=%s" % (shape, base.label, s_spec.sorted())
    return make_curve(base, s_spec, f, include_infinity=False, label=label, shape=shape, notes=notes)


def _alpha_text(a):
    if all(x == 0 for x in a[1:]):
        return str(a[0])
    return poly_str(list(a), "a")


def cyclotomic(q):
    """(x^q - 1)/(x - 1) as a rational coefficient list."""
    num = [Fraction(-1)] + [Fraction(0)] * (q - 1) + [Fraction(1)]
    return pdivmod(QQ, num, [Fraction(-1), Fraction(1)])[0]


def profile_pair(curve):
    """Both profiles; raises AssertionError when the routes disagree."""
    a = jacobian_profile(curve)
    b = jacobian_profile_orbit_form(curve)
    assert (a.dim, a.rank) == (b.dim, b.rank), "profile routes disagree on %s" % curve.label
    return a, b
