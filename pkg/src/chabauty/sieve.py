"""A desk-scale congruence sieve for the S-unit equation x + y = 1 over Q.

Candidates x = +-prod p_i^a_i with exponents in a box are reduced modulo
p^N.  A candidate survives when 1 - x is a p-adic unit lying in the subgroup
of (Z/p^N)^x generated by the S-units.  Survivors are then settled in exact
rational arithmetic.  The answer is compared with a separate exhaustive
search over the same box.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from .bcp import delta_ledger, obstruction_verdict, start_chain
from .charrank import instance, verify_main_rank_bound, verify_no_subgroup_obstruction
from .errors import (BoxTooSmall, ChabautyError, EvenPrimeUnsupported, GeneratorNotCoprime,
                     IndexObstruction)
from .numfield import SSpec, is_prime, rational_field, sspec, tower
from .padic import closure_dimension, log_unit, unit_log_matrix, valuation
from .puncture import build_x_alpha_q

ENV_PRECISION = "CHABAUTY_PRECISION"
DEFAULT_PRECISION = 10
DEFAULT_BOX = 12
CONFIRMED = "CONFIRMED"
CANDIDATE = "CANDIDATE"


def default_precision():
    raw = os.environ.get(ENV_PRECISION)
    return int(raw) if raw else DEFAULT_PRECISION


@dataclass(frozen=True)
class SUnitSolution:
    x: Fraction
    y: Fraction

    def pair(self):
        return (self.x, self.y)


@dataclass
class SieveResult:
    surviving_classes: list
    confirmed_solutions: list
    exhaustive_bound_used: int
    excluded: int = 0
    surviving_unconfirmed: int = 0
    closure: tuple = (0, True)
    parameters: dict = field(default_factory=dict)

    def pairs(self):
        return sorted(s.pair() for s in self.confirmed_solutions)


def _primes(S0):
    return S0.sorted() if isinstance(S0, SSpec) else sorted(set(S0))


def s_unit_exponents(x, primes):
    """Exponent vector of a nonzero rational over primes, or None if not an S-unit."""
    x = Fraction(x)
    if x == 0:
        return None
    num, den = abs(x.numerator), x.denominator
    exps = []
    for p in primes:
        a = 0
        while num % p == 0:
            num //= p
            a += 1
        while den % p == 0:
            den //= p
            a -= 1
        exps.append(a)
    if num != 1 or den != 1:
        return None
    return exps


def box_elements(primes, box):
    out = []
    for exps in product(range(-box, box + 1), repeat=len(primes)):
        v = Fraction(1)
        for p, a in zip(primes, exps):
            v *= Fraction(p) ** a
        out.append(v)
        out.append(-v)
    return out


class UnitGroupImage:
    """The subgroup of (Z/p^N)^x generated by given units.

    (Z/p^N)^x is cyclic of order (p - 1) p^(N-1).  A unit u is sent to its
    discrete log: the part mod p - 1 by brute force against a primitive root,
    the part mod p^(N-1) from log(u^(p-1)) / p.  The subgroup is then the
    multiples of the gcd of the generator images.
    """

    def __init__(self, generators, p, N):
        self.p, self.N = p, N
        self.g = _primitive_root(p)
        self._table = {}
        x = 1
        for k in range(p - 1):
            self._table[x] = k
            x = x * self.g % p
        order_p = p ** (N - 1)
        # log of the primitive root has valuation exactly 1, so it is invertible after dividing by p
        self._base_inv = pow(log_unit(self.g, p, N).residue // p, -1, order_p) if N > 1 else 0
        self.images = [self.dlog(u) for u in generators]
        self.step_tame = gcd(p - 1, *[a for a, _ in self.images])
        self.step_wild = gcd(order_p, *[b for _, b in self.images])

    def dlog(self, u):
        """(exponent mod p - 1, exponent mod p^(N-1)) of u against the primitive root."""
        p, N = self.p, self.N
        u = Fraction(u)
        if valuation(u, p) != 0:
            raise GeneratorNotCoprime("%s is not a unit at %d" % (u, p))
        r = u.numerator * pow(u.denominator, -1, p) % p
        tame = self._table[r]
        if N == 1:
            return tame, 0
        wild = log_unit(u, p, N).residue // p
        return tame, wild * self._base_inv % p ** (N - 1)

    def contains(self, u):
        a, b = self.dlog(u)
        return a % self.step_tame == 0 and b % self.step_wild == 0


def _primitive_root(p):
    fac = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fac):
            if pow(g, p - 1, p * p) != 1:
                return g
    raise ChabautyError("no primitive root found for %d" % p)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def skolem_sieve(K, S0, p, N=None, box=DEFAULT_BOX, generators=None):
    """Sieve x + y = 1 in S-units of Q modulo p^N, then settle survivors exactly."""
    if K.degree != 1:
        raise ChabautyError("the sieve is implemented for base Q only")
    N = default_precision() if N is None else N
    primes = _primes(S0)
    if p == 2:
        raise EvenPrimeUnsupported("auxiliary prime must be odd")
    if not is_prime(p):
        raise ValueError("%r is not prime" % (p,))
    gens = [-1] + primes if generators is None else list(generators)
    for u in gens:
        if Fraction(u).numerator % p == 0 or Fraction(u).denominator % p == 0:
            raise GeneratorNotCoprime("generator %s is divisible by %d" % (u, p))
    group = UnitGroupImage(gens, p, N)
    closure = closure_dimension(unit_log_matrix(gens, p, N), p, N)
    survivors = []
    for x in box_elements(primes, box):
        y = 1 - x
        if y == 0 or y.numerator % p == 0:
            continue
        if group.contains(y):
            survivors.append(x)
    confirmed, excluded = [], 0
    for x in survivors:
        y = 1 - x
        exps = s_unit_exponents(y, primes)
        if exps is None:
            excluded += 1
            continue
        if any(abs(a) > box for a in exps):
            raise BoxTooSmall("y = %s has exponents %s outside the box %d" % (y, exps, box))
        confirmed.append(SUnitSolution(x, y))
    m = p ** N
    classes = sorted({x.numerator * pow(x.denominator, -1, m) % m for x in survivors})
    confirmed.sort(key=lambda s: s.pair())
    return SieveResult(classes, confirmed, box, excluded, 0, closure,
                       {"p": p, "N": N, "S0": primes, "generators": [Fraction(u) for u in gens],
                        "box": box})


def exhaustive_solutions(S0, box=DEFAULT_BOX):
    """All (x, y) with x, y = +-prod p^a, |a| <= box, x + y = 1, by set lookup."""
    primes = _primes(S0)
    values = set(box_elements(primes, box))
    return sorted((x, 1 - x) for x in values if (1 - x) in values)


# full pipeline

@dataclass
class CurveReport:
    alpha: int
    label: str
    shape: str
    check: str
    verdict: str
    notes: list
    points: list


@dataclass
class DeskReport:
    solutions: list
    status: str
    curves: list
    sieve: SieveResult
    oracle: list
    parameters: dict


def alpha_representatives(primes, q):
    """prod p^e for e in [0, q): coset representatives of S-units modulo qth powers.

    -1 is a qth power for odd q, so signs are not needed.
    """
    out = []
    for exps in product(range(q), repeat=len(primes)):
        a = 1
        for p, e in zip(primes, exps):
            a *= p ** e
        out.append((a, exps))
    return out


def solve_sunit_desk(config):
    """Curves X_{alpha,q}, their verdicts, the sieve, and the union of their points.

    config keys: S0, q (default 5), p (auxiliary prime), N, box.
    """
    Q = rational_field()
    primes = _primes(config.get("S0", ()))
    q = int(config.get("q", 5))
    if q == 2 or not is_prime(q):
        raise ValueError("q must be an odd prime")
    N = int(config.get("N") or default_precision())
    box = int(config.get("box", DEFAULT_BOX))
    p = int(config.get("p") or _auxiliary_prime(primes))
    s = sspec(primes)
    curves = []
    for alpha, exps in alpha_representatives(primes, q):
        X = build_x_alpha_q(Q, s, alpha, q)
        check, verdict = _curve_verdict(Q, s, q, alpha, X)
        curves.append(CurveReport(alpha, X.label, X.shape, check, verdict, list(X.notes), []))
    sieve = skolem_sieve(Q, s, p, N, box)
    by_alpha = {c.alpha: c for c in curves}
    union = []
    for sol in sieve.confirmed_solutions:
        alpha, t = curve_point(sol.x, primes, q)
        if t == 0 or (t ** q == alpha and alpha != 1) or (alpha == 1 and sol.x == 1):
            continue  # section meets a removed puncture
        by_alpha[alpha].points.append(t)
        union.append(image_of_point(alpha, t, q))
    union = sorted((x, 1 - x) for x in union)
    oracle = exhaustive_solutions(primes, box)
    status = CONFIRMED if union == oracle and sieve.surviving_unconfirmed == 0 else CANDIDATE
    for c in curves:
        c.points.sort()
    return DeskReport(union, status, curves, sieve, oracle,
                      {"S0": primes, "q": q, "p": p, "N": N, "box": box})


def _auxiliary_prime(primes):
    p = 3
    while p in primes or not is_prime(p):
        p += 2
    return p


def _curve_verdict(Q, s, q, alpha, X):
    if alpha == 1:
        ledger = delta_ledger(start_chain(X, tower([Q], [])))
        ob = obstruction_verdict(start_chain(X, tower([Q], [])))
        try:
            bound = verify_main_rank_bound(instance(Q, s, q, 1))
            extra = "main bound %s" % bound.verdict
        except IndexObstruction as exc:
            extra = "main bound skipped: %s" % exc
        check = "ledger lower bound %s; %s" % (ledger.lower_bound, extra)
        return check, ob.verdict
    rep = verify_no_subgroup_obstruction(instance(Q, s, q, alpha))
    return "no-subgroup margin %s vs %s" % (rep.lhs, rep.rhs), rep.verdict


def curve_point(x, primes, q):
    """(alpha, t) with x = alpha / t^q, alpha a coset representative."""
    exps = s_unit_exponents(x, primes)
    alpha = 1
    u = Fraction(1 if x > 0 else -1)
    for p, a in zip(primes, exps):
        r = a % q
        alpha *= p ** r
        u *= Fraction(p) ** ((a - r) // q)
    # x = alpha * u^q with u = sign * prod p^((a - r)/q); q odd absorbs the sign
    return alpha, 1 / u


def image_of_point(alpha, t, q):
    return Fraction(alpha) / Fraction(t) ** q
