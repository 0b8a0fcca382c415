"""Character-theoretic torus ranks and instance-level checks of the rank inequalities.

Ranks of tori over rings of S-integers are inner products of the torus
character with the permutation representation on the archimedean places
(and the places in S), minus the trivial part.  Two groups are handled
explicitly: finite abelian groups given by invariant factors, and the
dihedral group Z/q x| Z/2 acting on the qth roots of an element.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from . import relative
from .errors import (AlphaIsQthPower, IndexObstruction, NegativeMultiplicity,
                     NotAbelianDeclared, NotDescendable, QNotPrime, UnsupportedGaloisShape)
from .numfield import (detect_cm_subfield, is_prime, rational_field, s_unit_rank,
                       splitting_profile, SSpec, sspec)
from .puncture import (build_x_alpha_q, is_qth_power, jacobian_profile,
                       jacobian_profile_orbit_form, parse_element)

PASS = "Pass"
FAIL = "Fail"
NO_SUBGROUP_OBSTRUCTION = "NoSubgroupObstruction"
INCONCLUSIVE = "Inconclusive"
FINITE = "FiniteChabautySet"
EVERYTHING = "ChabautySetIsEverything-underLeopoldt"


@dataclass(frozen=True)
class CharacterDatum:
    group: tuple                # ("abelian", invariant factors) or ("semidirect", q)
    multiplicities: tuple       # sorted (irrep index, multiplicity) pairs

    def __post_init__(self):
        for idx, m in self.multiplicities:
            if m < 0:
                raise NegativeMultiplicity("multiplicity of %r is %d" % (idx, m))

    @classmethod
    def make(cls, group, mults):
        items = mults.items() if isinstance(mults, dict) else mults
        return cls(tuple(group), tuple(sorted((tuple(k) if isinstance(k, list) else k, int(v))
                                              for k, v in items)))

    def mult(self):
        return dict(self.multiplicities)

    @property
    def dimension(self):
        if self.group[0] == "abelian":
            return sum(m for _, m in self.multiplicities)
        return sum(m * (1 if idx in ("trivial", "sign") else 2) for idx, m in self.multiplicities)


def anisotropic_rank_bounds(F, dim_T):
    """(r2 * dim, (r1 + r2) * dim): the range for ranks of anisotropic tori over O_F."""
    r1, r2 = F.signature
    return r2 * dim_T, (r1 + r2) * dim_T


# cyclotomic integers Z[x]/(x^q - 1), used for dihedral character values

def _cyc_zero(q):
    return [0] * q


def _cyc_add(a, b):
    return [x + y for x, y in zip(a, b)]


def _cyc_scale(c, a):
    return [c * x for x in a]


def _cyc_rational(a):
    """The rational value of a cyclotomic integer, or None if it is not rational.

    In Z[zeta_q] the relation 1 + zeta + ... + zeta^(q-1) = 0 means the
    vector a represents a rational number exactly when a[1] = ... = a[q-1].
    """
    if any(x != a[1] for x in a[1:]):
        return None
    return a[0] - a[1]


def dihedral_elements(q):
    """Pairs (a, b) standing for r^a s^b in Z/q x| Z/2."""
    return [(a, b) for b in (0, 1) for a in range(q)]


def dihedral_mul(q, g, h):
    a, b = g
    c, d = h
    return ((a + (c if b == 0 else -c)) % q, (b + d) % 2)


def dihedral_inv(q, g):
    a, b = g
    return ((-a) % q, 0) if b == 0 else g


def dihedral_character(q, j, g):
    """Value of the jth two-dimensional irreducible character at g."""
    a, b = g
    v = _cyc_zero(q)
    if b == 1:
        return v
    v[(j * a) % q] += 1
    v[(-j * a) % q] += 1
    return v


def induced_from_reflection(q, g):
    """Ind_H^G 1 evaluated at g, H = {1, s}, by counting fixed cosets."""
    G = dihedral_elements(q)
    H = {(0, 0), (0, 1)}
    hits = sum(1 for x in G if dihedral_mul(q, dihedral_mul(q, dihedral_inv(q, x), g), x) in H)
    return Fraction(hits, len(H))


def semidirect_rank(q, two_dim_multiplicities):
    """(dim, rank) of a torus whose character uses only the 2-dim irreducibles.

    rank is the pairing of the torus character with Ind_H^G 1 for H of order 2,
    computed by summing over all 2q group elements, and cross-checked against
    the restriction to H.
    """
    if not is_prime(q) or q == 2:
        raise QNotPrime("q must be an odd prime, got %r" % (q,))
    mults = list(two_dim_multiplicities)
    if len(mults) != (q - 1) // 2:
        raise ValueError("need %d multiplicities for q = %d" % ((q - 1) // 2, q))
    for m in mults:
        if m < 0:
            raise NegativeMultiplicity("negative multiplicity %d" % m)
    G = dihedral_elements(q)
    ind = _induced_table(q)
    total = _cyc_zero(q)
    for g in G:
        chi = _cyc_zero(q)
        for j, m in enumerate(mults, start=1):
            if m:
                chi = _cyc_add(chi, _cyc_scale(m, dihedral_character(q, j, g)))
        total = _cyc_add(total, [x * ind[g] for x in chi])
    pairing = _cyc_rational(total)
    assert pairing is not None, "character pairing is not rational"
    rank = Fraction(pairing) / (2 * q)
    dim = _cyc_rational(_character_sum(q, mults, (0, 0)))
    restricted = Fraction(dim + _cyc_rational(_character_sum(q, mults, (0, 1))), 2)
    assert rank == restricted, "Frobenius reciprocity check failed"
    assert rank.denominator == 1
    if len(set(mults)) == 1:
        assert dim % (q - 1) == 0, "Galois-complete torus dimension must be a multiple of q - 1"
    return int(dim), int(rank)


_IND_CACHE = {}


def _induced_table(q):
    if q not in _IND_CACHE:
        _IND_CACHE[q] = {g: induced_from_reflection(q, g) for g in dihedral_elements(q)}
    return _IND_CACHE[q]


def _character_sum(q, mults, g):
    chi = _cyc_zero(q)
    for j, m in enumerate(mults, start=1):
        chi = _cyc_add(chi, _cyc_scale(m, dihedral_character(q, j, g)))
    return chi


# abelian extensions

def abelian_characters(invariants):
    return list(product(*[range(n) for n in invariants]))


def norm_one_datum(invariants):
    """Character of the norm-one torus: every nontrivial character once."""
    invariants = tuple(invariants)
    chars = abelian_characters(invariants)
    return CharacterDatum.make(("abelian", invariants),
                               {k: 1 for k in chars if any(k)})


def places_representation(K, L, invariants, S0=()):
    """Multiplicity of each character of Gal(L/K) in the permutation
    representation on the places of L above infinity and above S0."""
    invariants = tuple(invariants)
    n = 1
    for x in invariants:
        n *= x
    if L.degree != n * K.degree:
        raise NotAbelianDeclared("declared group order %d does not match [L:K]" % n)
    r1K, r2K = K.signature
    ramified_num = r1K * n - L.r1
    if n == 0 or ramified_num % n or not 0 <= ramified_num // n <= r1K:
        raise NotAbelianDeclared("signatures of %s and %s are inconsistent with a Galois extension"
                                 % (L.label, K.label))
    ramified = ramified_num // n
    even = [i for i, x in enumerate(invariants) if x % 2 == 0]
    if ramified and len(even) != 1:
        raise UnsupportedGaloisShape("complex conjugation is not determined by the invariants %s"
                                     % (invariants,))
    S0 = list(S0)
    if S0 and (K.degree != 1 or len(invariants) != 1):
        raise UnsupportedGaloisShape("finite places need base Q and a cyclic group")
    freqs = []
    for p in S0:
        g = splitting_profile(L, p).places
        freqs.append(n // g)
    out = {}
    for k in abelian_characters(invariants):
        mult = (r1K - ramified) + r2K
        if ramified:
            i = even[0]
            mult += ramified if k[i] % 2 == 0 else 0
        for f in freqs:
            mult += 1 if k[0] % f == 0 else 0
        out[k] = mult
    return out


def subtorus_rank_abelian(K, L, stable_piece, S0=()):
    """Rank over O_{K,S} of a Galois-stable piece of Res_{L/K} G_m, L/K abelian."""
    group = stable_piece.group
    if group[0] != "abelian":
        raise NotAbelianDeclared("L/K must be declared abelian with invariant factors")
    invariants = tuple(group[1])
    psi = places_representation(K, L, invariants, S0)
    mults = stable_piece.mult()
    trivial = tuple(0 for _ in invariants)
    total = sum(m * psi[k] for k, m in mults.items())
    return total - mults.get(trivial, 0)


# S-prime counts for K(alpha^(1/q))

@dataclass(frozen=True)
class PrimeCountEntry:
    prime: int
    place: int
    residue_degree: int
    order: object               # multiplicative order of #residue field mod q, None when p = q
    is_residue: object          # alpha is a qth power in the residue field (None when undefined)
    count: int


@dataclass(frozen=True)
class PrimeCountReport:
    entries: tuple
    total: int

    def by_prime(self):
        out = {}
        for e in self.entries:
            out[e.prime] = out.get(e.prime, 0) + e.count
        return out


def multiplicative_order(a, q):
    a %= q
    k, x = 1, a
    while x != 1:
        x = x * a % q
        k += 1
    return k


def _p_valuation(x, p):
    v = 0
    while x and x % p == 0:
        x //= p
        v += 1
    return v


def sunit_prime_count(K, S0, q, alpha):
    """Places of K(alpha^(1/q)) above each place of K over S0."""
    if not is_prime(q):
        raise QNotPrime("%r is not prime" % (q,))
    S0 = S0.sorted() if isinstance(S0, SSpec) else sorted(S0)
    a = parse_element(K, alpha)
    entries = []
    for p in S0:
        places = relative.primes_above(K, p)
        for idx, place in enumerate(places):
            f = len(place) - 1
            if p == q:
                entries.append(PrimeCountEntry(p, idx, f, None, None, 1))
                continue
            size = p ** f
            order = multiplicative_order(size, q)
            unit = _local_unit(K, a, p, q)
            if unit is None:
                entries.append(PrimeCountEntry(p, idx, f, order, None, 1))
                continue
            F = relative.residue_field(p, place)
            try:
                r = relative.reduce_element(F, unit)
            except IndexObstruction:
                entries.append(PrimeCountEntry(p, idx, f, order, None, 1))
                continue
            if F.is_zero(r):
                entries.append(PrimeCountEntry(p, idx, f, order, None, 1))
                continue
            g = gcd(q, size - 1)
            residue = g == 1 or F.pow(r, (size - 1) // g) == F.one
            count = 1 + (q - 1) // order if residue else 1
            entries.append(PrimeCountEntry(p, idx, f, order, residue, count))
    return PrimeCountReport(tuple(entries), sum(e.count for e in entries))


def _local_unit(K, a, p, q):
    """alpha with its p-part removed when that is possible over Q.

    Returns None when alpha has valuation prime to q at p (a totally ramified
    place of the Kummer extension).  Over larger bases alpha is used as is.
    """
    if K.degree != 1:
        return a
    x = a[0]
    v = _p_valuation(x.numerator, p) - _p_valuation(x.denominator, p)
    if v % q:
        return None
    return K.arith.coerce(x / Fraction(p) ** v)


# verifiers

@dataclass(frozen=True)
class VerifierInstance:
    base: object
    s_spec: SSpec
    q: int
    alpha: object = 1
    epsilon: Fraction = Fraction(1, 4)
    tower: object = None

    def __post_init__(self):
        if not is_prime(self.q):
            raise QNotPrime("%r is not prime" % (self.q,))
        if Fraction(self.epsilon) <= 0:
            raise ValueError("epsilon must be positive")

    def describe(self):
        return {"base": self.base.label, "S0": self.s_spec.sorted(), "q": self.q,
                "alpha": str(self.alpha), "epsilon": Fraction(self.epsilon)}


def instance(base, S0=(), q=5, alpha=1, epsilon=Fraction(1, 4), tower=None):
    return VerifierInstance(base, S0 if isinstance(S0, SSpec) else sspec(S0), q, alpha,
                            Fraction(epsilon), tower)


@dataclass
class VerifierReport:
    kind: str
    instance: dict
    verdict: str
    lhs: object = None
    rhs: object = None
    hypothesis_flags: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def to_dict(self):
        return {"kind": self.kind, "instance": self.instance, "verdict": self.verdict,
                "inequality": {"lhs": self.lhs, "rhs": self.rhs},
                "hypothesis_flags": list(self.hypothesis_flags), "witnesses": self.witnesses}


def _cm_flags(inst):
    K = inst.base
    subs = inst.tower if inst.tower is not None else \
        ([rational_field(), K] if K.degree > 1 else [K])
    cm = detect_cm_subfield(K, subs)
    return (["CmSubfieldPresent"] if cm.found else []), cm


def verify_main_rank_bound(inst, subfield=None):
    """Check rank J_X(R') <= ([K':Q] - 1/2 + eps)(q - 2) for X over the subfield K'."""
    K = inst.base
    sub = subfield or K
    flags, cm = _cm_flags(inst)
    a = parse_element(K, inst.alpha)
    if is_qth_power(K, a, inst.q):
        alpha_sub = 1
    else:
        flags.append("AlphaNotQthPower")
        alpha_sub = _pull_to(inst, sub, a)
    X = build_x_alpha_q(sub, inst.s_spec, alpha_sub, inst.q)
    prof = jacobian_profile(X)
    orbit = jacobian_profile_orbit_form(X)
    assert (prof.dim, prof.rank) == (orbit.dim, orbit.rank), "profile routes disagree"
    rhs = (sub.degree - Fraction(1, 2) + Fraction(inst.epsilon)) * (inst.q - 2)
    verdict = PASS if prof.rank <= rhs else FAIL
    wit = {"curve": X.label, "dim": prof.dim, "rank": prof.rank, "subfield": sub.label}
    if cm.found:
        wit["cm_subfield"] = cm.witness.label
    return VerifierReport("main-bound", inst.describe(), verdict, prof.rank, rhs, flags, wit)


def _pull_to(inst, sub, a):
    K = inst.base
    if sub.defining_poly == K.defining_poly:
        return a
    if inst.tower is None:
        raise NotDescendable("alpha", "a tower is needed to move alpha into %s" % sub.label)
    t = inst.tower
    v = t.pull_element(t.index(K.label), t.index(sub.label), a)
    if v is None:
        raise NotDescendable("alpha", "alpha does not lie in %s" % sub.label)
    return v


def verify_no_subgroup_obstruction(inst):
    """Check dim - rank_upper > [K:Q] for every subtorus dimension class m(q - 1)."""
    K = inst.base
    q = inst.q
    a = parse_element(K, inst.alpha)
    if is_qth_power(K, a, q):
        raise AlphaIsQthPower("alpha is a qth power in %s" % K.label)
    counts = sunit_prime_count(K, inst.s_spec, q, a)
    n_places = sum(len(relative.primes_above(K, p)) for p in inst.s_spec.sorted())
    correction = counts.total - n_places
    d = K.degree
    classes = []
    failing = None
    for m in range(1, d + 1):
        dim, rank = semidirect_rank(q, [m] * ((q - 1) // 2)) if q > 2 else (m, 0)
        upper = Fraction(dim, 2) + correction
        margin = dim - upper
        ok = margin > d
        classes.append({"m": m, "dim": dim, "semidirect_rank": rank, "rank_upper": upper,
                        "margin": margin, "passes": ok})
        if not ok and failing is None:
            failing = classes[-1]
    verdict = NO_SUBGROUP_OBSTRUCTION if failing is None else INCONCLUSIVE
    head = failing or min(classes, key=lambda c: c["margin"])
    wit = {"classes": classes, "prime_counts": [e.__dict__ for e in counts.entries],
           "total_S_prime": counts.total, "places_in_S": n_places, "correction": correction}
    if failing is not None:
        wit["failing_class"] = failing
    return VerifierReport("no-subgroup", inst.describe(), verdict, head["margin"], d, [], wit)


def classical_chabauty_verdict(K, S0, curve, galois=None):
    """Search the isogeny factors of J for one with rank < dim.

    Factors: the G_m-isotypic block (one copy per orbit beyond the first) and
    one norm-one torus per orbit of degree > 1.  galois optionally maps orbit
    indices to invariant factors of an abelian Gal(L/K), used to recompute
    that factor's rank from characters.
    """
    if K.defining_poly != curve.base.defining_poly:
        raise ValueError("curve is not defined over %s" % K.label)
    S0 = S0.sorted() if isinstance(S0, SSpec) else sorted(S0)
    sK = s_unit_rank(K, S0)
    c = len(curve.orbits)
    catalog = []
    if c > 1:
        catalog.append({"factor": "Gm^%d" % (c - 1), "dim": c - 1, "rank": (c - 1) * sK})
    for k, o in enumerate(curve.orbits):
        if o.degree == 1:
            continue
        L = o.residue_field
        rank = s_unit_rank(L, S0) - sK
        entry = {"factor": "N(%s/%s)" % (L.label, K.label), "dim": o.degree - 1, "rank": rank}
        if galois and k in galois:
            alt = subtorus_rank_abelian(K, L, norm_one_datum(galois[k]), S0)
            assert alt == rank, "character rank disagrees with unit ranks"
            entry["character_rank"] = alt
        if not S0:
            lo, hi = anisotropic_rank_bounds(K, o.degree - 1)
            assert lo <= rank <= hi, "anisotropic bounds violated"
            entry["anisotropic_bounds"] = [lo, hi]
        catalog.append(entry)
    witness = next((f for f in catalog if f["rank"] < f["dim"]), None)
    verdict = FINITE if witness else EVERYTHING
    report = VerifierReport("classical", {"base": K.label, "S0": S0, "curve": curve.label},
                            verdict, witness["rank"] if witness else None,
                            witness["dim"] if witness else None)
    report.witnesses = {"catalog": catalog}
    if witness:
        report.witnesses["witness"] = witness
    return report
