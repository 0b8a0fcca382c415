"""Number fields given by monic irreducible integer polynomials.

Covers construction with an irreducibility certificate, signatures by Sturm
sequences, prime splitting at primes coprime to the polynomial discriminant,
S-unit ranks, validated subfield towers, CM-subfield detection and absolute
fields of relative extensions.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from . import cache, gfp
from .errors import (IndexObstruction, InvalidEmbedding, NotMonic, Reducible,
                     RelativeReducible, ShiftExhausted, ZeroPolynomial)
from .fields import QQ, AlgebraicField, pgcd, pderiv, ptrim, presultant
from .linalg import solve
from .poly import count_real_roots, discriminant, poly_str
from .zfactor import factor_z


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


@dataclass(frozen=True)
class NumberField:
    defining_poly: tuple
    degree: int
    signature: tuple
    poly_discriminant: int
    label: str

    def __post_init__(self):
        r1, r2 = self.signature
        assert r1 + 2 * r2 == self.degree, "signature inconsistent with degree"
        assert self.poly_discriminant != 0

    @property
    def r1(self):
        return self.signature[0]

    @property
    def r2(self):
        return self.signature[1]

    @property
    def arith(self):
        return _arith(self.defining_poly)

    def is_rational(self):
        return self.degree == 1

    def is_totally_real(self):
        return self.r2 == 0

    def is_totally_complex(self):
        return self.r1 == 0

    def key(self):
        return tuple(self.defining_poly)

    def __str__(self):
        return self.label


@lru_cache(maxsize=None)
def _arith(poly):
    return AlgebraicField(list(poly))


@dataclass(frozen=True)
class SSpec:
    rational_primes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for p in self.rational_primes:
            if not is_prime(p):
                raise ValueError("%r is not prime" % (p,))

    def __iter__(self):
        return iter(sorted(self.rational_primes))

    def __len__(self):
        return len(self.rational_primes)

    def sorted(self):
        return sorted(self.rational_primes)


def sspec(primes=()):
    return SSpec(frozenset(int(p) for p in primes))


@dataclass(frozen=True)
class SplittingProfile:
    prime: int
    residue_degrees: tuple
    exact: bool

    @property
    def places(self):
        return len(self.residue_degrees)


def _int_coeffs(coeffs):
    out = []
    for c in coeffs:
        fc = Fraction(c)
        if fc.denominator != 1:
            raise ValueError("defining polynomial must have integer coefficients")
        out.append(int(fc))
    return out


def parse_number_field(coeffs, label=None):
    """Build a NumberField from an ascending integer coefficient list."""
    coeffs = list(coeffs)
    if not coeffs:
        raise ZeroPolynomial("empty coefficient list")
    c = _int_coeffs(coeffs)
    while c and c[-1] == 0:
        c.pop()
    if not c:
        raise ZeroPolynomial("zero polynomial")
    if c[-1] != 1:
        raise NotMonic("leading coefficient %d is not 1" % c[-1])
    if len(c) == 1:
        raise ZeroPolynomial("constant polynomial defines no field")
    return _build_field(tuple(c), label)


@lru_cache(maxsize=None)
def _build_field(c, label):
    n = len(c) - 1
    if n > 1:
        root = _rational_root(c)
        if root is not None:
            raise Reducible([-root, 1])
        _, facs = factor_z(list(c))
        if len(facs) != 1 or facs[0][1] != 1:
            raise Reducible(facs[0][0])
    r1 = count_real_roots(list(c))
    disc = discriminant(list(c))
    return NumberField(tuple(c), n, (r1, (n - r1) // 2), int(disc),
                       label or _default_label(c))


def _default_label(c):
    if len(c) == 2:
        return "Q" if c[0] == 0 else "Q[x]/(%s)" % poly_str(c)
    return "Q[x]/(%s)" % poly_str(c)


def _rational_root(c):
    """A root of a monic integer polynomial lies in Z and divides c0."""
    if c[0] == 0:
        return 0
    a0 = abs(c[0])
    for d in range(1, isqrt(a0) + 1):
        if a0 % d:
            continue
        for cand in {d, a0 // d}:
            for r in (cand, -cand):
                acc = 0
                for x in reversed(c):
                    acc = acc * r + x
                if acc == 0:
                    return r
    return None


def rational_field():
    return parse_number_field([0, 1], "Q")


def signature(F):
    return F.signature


def factor_mod_p(f, p):
    """Multiset of (degree, multiplicity) of the irreducible factors of f mod p."""
    if not is_prime(p):
        raise ValueError("%r is not prime" % (p,))
    return gfp.factor_degrees(_int_coeffs(f), p)


def splitting_profile(F, p):
    if not is_prime(p):
        raise ValueError("%r is not prime" % (p,))
    if F.poly_discriminant % p == 0:
        raise IndexObstruction("%d divides the discriminant of %s" % (p, F.label))
    key = {"poly": list(F.defining_poly), "p": p}
    degs = cache.lookup_or_compute(
        "splitting_profile", key,
        lambda: sorted(d for d, _ in factor_mod_p(F.defining_poly, p)))
    return SplittingProfile(p, tuple(degs), True)


def places_above(F, S0):
    return sum(splitting_profile(F, p).places for p in S0)


def s_unit_rank(F, S0=()):
    r1, r2 = F.signature
    return r1 + r2 + places_above(F, S0) - 1


# field elements and subfields

def element(F, value):
    """Coerce an int, rational or generator-coefficient list into F."""
    return F.arith.coerce(value)


def express_in_subfield(F, image, value, m):
    """Write value (in F) as a polynomial of degree < m in image, or None."""
    K = F.arith
    powers = [K.one]
    for _ in range(1, m):
        powers.append(K.mul(powers[-1], image))
    A = [[powers[j][i] for j in range(m)] for i in range(F.degree)]
    sol = solve(A, list(value))
    return sol


def check_embedding(small, big, image):
    """True when small's defining polynomial vanishes at image inside big."""
    K = big.arith
    img = K.coerce(image)
    acc = K.zero
    for c in reversed(small.defining_poly):
        acc = K.add(K.mul(acc, img), K.coerce(c))
    return K.is_zero(acc)


@dataclass(frozen=True)
class SubfieldTower:
    chain: tuple
    embeddings: tuple

    def __post_init__(self):
        if len(self.embeddings) != len(self.chain) - 1:
            raise InvalidEmbedding("need one embedding per consecutive pair")
        for a, b, e in zip(self.chain, self.chain[1:], self.embeddings):
            if b.degree <= a.degree or b.degree % a.degree:
                raise InvalidEmbedding("degrees %d, %d do not form a tower" % (a.degree, b.degree))
            if not check_embedding(a, b, e):
                raise InvalidEmbedding("embedding of %s into %s is invalid" % (a.label, b.label))

    @property
    def top(self):
        return self.chain[-1]

    def labels(self):
        return [F.label for F in self.chain]

    def index(self, label):
        for i, F in enumerate(self.chain):
            if F.label == label or F is label:
                return i
        raise KeyError(label)

    def member(self, label):
        return self.chain[self.index(label)]

    def image(self, i, j):
        """Image of member i's generator in member j (i <= j), as an element of j."""
        K = self.chain[j].arith
        if i == j:
            return K.generator()
        img = self.chain[i + 1].arith.coerce(self.embeddings[i])
        for k in range(i + 1, j):
            Kk1 = self.chain[k + 1].arith
            e = Kk1.coerce(self.embeddings[k])
            acc = Kk1.zero
            for c in reversed(img):
                acc = Kk1.add(Kk1.mul(acc, e), Kk1.coerce(c))
            img = acc
        return img

    def map_element(self, i, j, value):
        """Push an element of member i into member j."""
        Kj = self.chain[j].arith
        e = self.image(i, j)
        acc = Kj.zero
        for c in reversed(self.chain[i].arith.coerce(value)):
            acc = Kj.add(Kj.mul(acc, e), Kj.coerce(c))
        return acc

    def pull_element(self, j, i, value):
        """Express an element of member j inside member i, or None."""
        Fj = self.chain[j]
        sol = express_in_subfield(Fj, self.image(i, j), Fj.arith.coerce(value), self.chain[i].degree)
        return None if sol is None else self.chain[i].arith.coerce(sol)


def tower(fields, embeddings):
    return SubfieldTower(tuple(fields), tuple(tuple(Fraction(c) for c in e) for e in embeddings))


@dataclass(frozen=True)
class CmVerdict:
    found: bool
    witness: object = None
    totally_real_subfield: object = None
    reason: str = ""
    embedding: tuple = ()       # generator of the real subfield inside the witness


def _declared_subfields(F, subfields):
    if isinstance(subfields, SubfieldTower):
        if subfields.top.defining_poly != F.defining_poly:
            raise InvalidEmbedding("tower does not end at %s" % F.label)
        n = len(subfields.chain) - 1
        return [(subfields.chain[i], subfields.image(i, n)) for i in range(n + 1)]
    out = []
    K = F.arith
    for entry in subfields:
        if isinstance(entry, NumberField):
            if entry.defining_poly == F.defining_poly:
                out.append((entry, K.generator()))
            elif entry.degree == 1:
                out.append((entry, K.coerce(-entry.defining_poly[0])))
            else:
                raise InvalidEmbedding("subfield %s needs an embedding" % entry.label)
        else:
            sub, img = entry
            img = K.coerce(img)
            if not check_embedding(sub, F, img):
                raise InvalidEmbedding("embedding of %s into %s is invalid" % (sub.label, F.label))
            out.append((sub, img))
    return out


def detect_cm_subfield(F, subfields):
    """Search the declared subfields of F for a CM field."""
    declared = _declared_subfields(F, subfields)
    if F.degree % 2:
        return CmVerdict(False, reason="odd degree admits no CM subfield")
    for L, img_L in declared:
        if L.r1 != 0:
            continue
        for M, img_M in declared:
            if M.r2 != 0 or 2 * M.degree != L.degree:
                continue
            emb = express_in_subfield(F, img_L, img_M, L.degree)
            if emb is not None:
                return CmVerdict(True, L, M, "%s is totally complex quadratic over totally real %s"
                                 % (L.label, M.label), tuple(emb))
    return CmVerdict(False, reason="no CM field among the listed subfields")


# relative extensions

def relative_poly(base, coeffs):
    """Normalise a relative polynomial: list of base elements, trimmed."""
    K = base.arith
    return ptrim(K, [K.coerce(c) for c in coeffs])


def norm(base, value):
    """Norm from base to Q of a base element."""
    K = base.arith
    a = ptrim(QQ, list(K.coerce(value)))
    return presultant(QQ, list(K.modulus), a)


def _interpolate(xs, ys):
    """Coefficients of the polynomial through the points (Newton form)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        shifted = [Fraction(0)] + out
        for k in range(len(out)):
            shifted[k] -= xs[i] * out[k]
        shifted[0] += coef[i]
        out = shifted
    return ptrim(QQ, out)


def shifted_norm(base, f, s):
    """Res_y(g(y), f(x - s*y)) for a monic relative polynomial f over base."""
    K = base.arith
    D = base.degree * (len(f) - 1)
    theta = K.generator()
    xs, ys = [], []
    for x0 in range(D + 1):
        point = K.sub(K.coerce(x0), K.mul(K.coerce(s), theta))
        acc = K.zero
        for c in reversed(f):
            acc = K.add(K.mul(acc, point), c)
        xs.append(Fraction(x0))
        ys.append(norm(base, acc))
    return _interpolate(xs, ys)


def integralize(f):
    """Monic integer polynomial generating the same field as the monic rational f.

    Substitutes x -> x/c with c the lcm of the coefficient denominators.
    """
    n = len(f) - 1
    c = 1
    for a in f:
        d = Fraction(a).denominator
        c = c * d // gcd(c, d)
    return [int(Fraction(a) * c ** (n - i)) for i, a in enumerate(f)]


def _monic_over(K, f):
    inv = K.inv(f[-1])
    return [K.mul(inv, c) for c in f]


def absolute_field(base, rel, label=None):
    """Absolute NumberField for base[x]/(rel) by a shifted norm (Trager) construction."""
    K = base.arith
    f = relative_poly(base, rel)
    if len(f) < 2:
        raise RelativeReducible("relative polynomial must have positive degree")
    f = _monic_over(K, f)
    key = {"base": list(base.defining_poly),
           "rel": [[str(x) for x in c] for c in f]}
    payload = cache.lookup_or_compute("absolute_field", key, lambda: _absolute_payload(base, f))
    poly = [int(c) for c in payload["poly"]]
    try:
        return parse_number_field(poly, label)
    except Reducible as exc:
        raise RelativeReducible("relative polynomial is reducible over %s" % base.label) from exc


def _absolute_payload(base, f):
    K = base.arith
    if len(pgcd(K, f, pderiv(K, f))) > 1:
        raise RelativeReducible("relative polynomial is not squarefree over %s" % base.label)
    if base.degree == 1:
        vals = [c[0] for c in f]
        return {"poly": [str(c) for c in integralize(vals)], "shift": 0}
    for s in range(0, 33):
        N = shifted_norm(base, f, s)
        if len(pgcd(QQ, N, pderiv(QQ, N))) == 1:
            return {"poly": [str(c) for c in integralize(N)], "shift": s}
    raise ShiftExhausted("no shift in [0, 32] gives a squarefree norm")


def field_from_rational_poly(f, label=None):
    """NumberField for a monic irreducible rational polynomial (denominators cleared)."""
    f = [Fraction(c) for c in f]
    lc = f[-1]
    f = [c / lc for c in f]
    return parse_number_field(integralize(f), label)


def same_field_invariants(F, G, primes=(3, 5, 7, 11, 13)):
    """Compare isomorphism invariants: degree, signature, splitting at good primes."""
    if F.degree != G.degree or F.signature != G.signature:
        return False
    for p in primes:
        if F.poly_discriminant % p and G.poly_discriminant % p:
            if splitting_profile(F, p).residue_degrees != splitting_profile(G, p).residue_degrees:
                return False
    return True
