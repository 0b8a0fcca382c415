"""BCP tori: base-change and Prym successor chains, delta ledgers, verdicts.

A chain starts from the full restricted Jacobian of a curve over a tower
member and walks towards smaller curves.  A BC step replaces the running
curve by a model over a smaller tower member (the punctures must descend).
A P step maps the running curve onto a curve with fewer punctures; the
kernel of the push-forward (the Prym part) is kept as extra torus factors.
The torus attached to a chain is the accumulated Prym factors together with
the full restricted Jacobian of the final running curve, up to isogeny.

Tori are recorded as multisets of irreducible-ish building blocks over a
tower member F:

* ``Gm``: Res_{R_F/R0} G_m, dimension [F:Q], rank the S-unit rank of F;
* ``N(L)``: the norm-one torus of a residue field L over F, dimension
  [F:Q]([L:F] - 1), rank s(L) - s(F);
* symbolic pieces for single-orbit quotients whose image is not explicit.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil

from . import relative
from .errors import (CyclotomicNotDisjoint, DeltaDoesNotDivide, InvalidCoverMove,
                     NotCmField, NotDescendable, QNotPrime, RiemannHurwitzViolation)
from .fields import pmul
from .linalg import solve
from .numfield import (absolute_field, detect_cm_subfield, express_in_subfield,
                       field_from_rational_poly, is_prime, rational_field, s_unit_rank,
                       sspec, SSpec)
from .puncture import (PuncturedCurve, cyclotomic, jacobian_profile, make_curve)

UNCONDITIONAL = "Unconditional"
LEOPOLDT = "LeopoldtAssumed"

NO_OBSTRUCTION = "NoObstruction"
OBSTRUCTION_UNDER_LEOPOLDT = "ObstructionUnderLeopoldt"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, order=True)
class TorusFactor:
    member: str
    piece: str
    dim: int
    rank: object        # int, or None when only known symbolically

    def key(self):
        return (self.member, self.piece)


@dataclass(frozen=True)
class IsogenyClass:
    factors: tuple

    @classmethod
    def of(cls, factors):
        return cls(tuple(sorted(factors, key=lambda f: (f.member, f.piece, f.dim))))

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    @property
    def rank_r0(self):
        if any(f.rank is None for f in self.factors):
            return None
        return sum(f.rank for f in self.factors)

    def key(self):
        return tuple(f.key() for f in self.factors)

    def is_symbolic(self):
        return self.rank_r0 is None


@dataclass(frozen=True)
class SymbolicCurve:
    """Image of a single-orbit quotient: only the puncture count is known."""
    base: object
    s_spec: SSpec
    count: int
    label: str = ""

    def puncture_count(self):
        return self.count


@dataclass(frozen=True)
class BcpStep:
    kind: str                   # "BC" or "P"
    target: str = ""            # BC: tower member label
    forget: tuple = ()          # P: labels of forgotten orbits
    delta: int = 0              # P: single-orbit quotient degree (0 for forget moves)

    def describe(self):
        if self.kind == "BC":
            return "BC(%s)" % self.target
        if self.delta:
            return "P(quotient delta=%d)" % self.delta
        return "P(forget %s)" % ", ".join(self.forget)


@dataclass(frozen=True)
class BcpChain:
    origin_curve: PuncturedCurve
    tower: object
    steps: tuple = ()
    prym: tuple = ()            # accumulated Prym factors
    running: tuple = ()         # running curve after each step; running[0] is the origin

    @property
    def n(self):
        return len(self.steps)

    @property
    def current(self):
        return self.running[-1]

    @property
    def result(self):
        return IsogenyClass.of(list(self.prym) + jacobian_factors(self.current, self.tower))

    def describe(self):
        if not self.steps:
            return "0-BCP"
        return " -> ".join(s.describe() for s in self.steps)


@dataclass(frozen=True)
class DeltaLedger:
    deltas: tuple               # (description, value or None)
    lower_bound: int


@dataclass(frozen=True)
class ObstructionVerdict:
    mode: str
    dim_T: int
    rank_T_R0: object
    closure_dim_bound: object
    intersection_dim: int
    verdict: str
    ledger_lower_bound: int = 0
    evidence: dict = field(default_factory=dict, compare=False)


# tower bookkeeping

def member_index(tower, F):
    for i, G in enumerate(tower.chain):
        if G.defining_poly == F.defining_poly:
            return i
    raise NotDescendable(F.label, "%s is not a member of the tower" % F.label)


def ring_symbols(tower):
    """Names R0, ..., R', R for the rings of S-integers of the tower members."""
    n = len(tower.chain)
    out = {}
    for i, F in enumerate(tower.chain):
        primes = n - 1 - i
        out[F.label] = "R0" if i == 0 else "R" + "'" * primes
    return out


def _gm(F, S0):
    return TorusFactor(F.label, "Gm", F.degree, s_unit_rank(F, S0))


def _norm_one(F, L, m, S0):
    return TorusFactor(F.label, "N(%s)" % L.label, F.degree * (m - 1),
                       s_unit_rank(L, S0) - s_unit_rank(F, S0))


def orbit_factors(curve, orbit):
    """Res_{L/F} G_m for one orbit, split as G_m times the norm-one torus."""
    S0 = curve.s_spec.sorted()
    F = curve.base
    out = [_gm(F, S0)]
    if orbit.degree > 1:
        out.append(_norm_one(F, orbit.residue_field, orbit.degree, S0))
    return out


def jacobian_factors(curve, tower=None):
    """Isogeny factors of the restricted Jacobian of a curve over a tower member."""
    F = curve.base
    if isinstance(curve, SymbolicCurve):
        return [TorusFactor(F.label, "J[%d punctures]" % curve.count,
                            F.degree * (curve.count - 1), None)]
    S0 = curve.s_spec.sorted()
    out = [_gm(F, S0) for _ in range(len(curve.orbits) - 1)]
    for o in curve.orbits:
        if o.degree > 1:
            out.append(_norm_one(F, o.residue_field, o.degree, S0))
    return out


def start_chain(curve, tower):
    """The 0-BCP chain: the full restricted Jacobian of curve."""
    member_index(tower, curve.base)
    return BcpChain(curve, tower, (), (), (curve,))


# successor moves

def _descend(curve, tower, j):
    i = member_index(tower, curve.base)
    target = tower.chain[j]
    if j > i:
        raise NotDescendable(target.label, "%s is not a subfield of %s" % (target.label, curve.base.label))
    # orbits may merge over the smaller field, so descend the whole divisor
    D = curve.divisor()
    pulled = []
    for c in D:
        v = tower.pull_element(i, j, c)
        if v is None:
            bad = next((o.label() for o in curve.finite_orbits()
                        if any(tower.pull_element(i, j, x) is None for x in o.relative_poly)),
                       "divisor")
            raise NotDescendable(bad)
        pulled.append(v)
    if len(D) <= 1:
        pulled = [target.arith.one]
    return make_curve(target, curve.s_spec, pulled, include_infinity=curve.has_infinity(),
                      label="", shape=curve.shape)


def bc_successor(chain, target):
    """Re-base the running curve on a smaller tower member."""
    cur = chain.current
    if isinstance(cur, SymbolicCurve):
        raise NotDescendable("symbolic", "a symbolic quotient curve cannot be descended")
    tower = chain.tower
    if isinstance(target, int):
        j = target
    elif isinstance(target, str):
        j = tower.index(target)
    else:
        j = member_index(tower, target)
    new = cur if tower.chain[j].defining_poly == cur.base.defining_poly else _descend(cur, tower, j)
    step = BcpStep("BC", target=tower.chain[j].label)
    return BcpChain(chain.origin_curve, tower, chain.steps + (step,), chain.prym,
                    chain.running + (new,))


def _select(curve, forget):
    chosen = set()
    for item in forget:
        if isinstance(item, int):
            if not 0 <= item < len(curve.orbits):
                raise InvalidCoverMove("orbit index %d out of range" % item)
            chosen.add(item)
        else:
            label = item.label() if hasattr(item, "label") else str(item)
            hits = [k for k, o in enumerate(curve.orbits) if o.label() == label]
            if not hits:
                raise InvalidCoverMove("no orbit labelled %r" % label)
            chosen.update(hits)
    return sorted(chosen)


def p_successor(chain, move):
    """Apply a cover move: ("forget", orbits) or ("quotient", delta)."""
    kind, arg = move
    cur = chain.current
    if isinstance(cur, SymbolicCurve):
        raise InvalidCoverMove("no further moves on a symbolic quotient curve")
    if kind == "forget":
        idx = _select(cur, arg)
        kept = [o for k, o in enumerate(cur.orbits) if k not in idx]
        if not idx or not kept:
            raise InvalidCoverMove("forget move must drop a proper nonempty set of orbits")
        if sum(o.degree for o in kept) < 2:
            raise InvalidCoverMove("image curve needs at least two geometric punctures")
        gone = [cur.orbits[k] for k in idx]
        prym = []
        for o in gone:
            prym.extend(orbit_factors(cur, o))
        new = PuncturedCurve(cur.base, cur.s_spec, tuple(kept),
                             "P1/%s minus {%s}" % (cur.base.label, ", ".join(o.label() for o in kept)),
                             cur.shape)
        step = BcpStep("P", forget=tuple(o.label() for o in gone))
        return BcpChain(chain.origin_curve, chain.tower, chain.steps + (step,),
                        chain.prym + tuple(prym), chain.running + (new,))
    if kind == "quotient":
        delta = int(arg)
        n = cur.puncture_count()
        if delta == 1:
            raise RiemannHurwitzViolation("a degree-1 quotient is an isomorphism, not a cover")
        if delta < 1:
            raise InvalidCoverMove("quotient degree must be at least 2")
        if n % delta:
            raise DeltaDoesNotDivide("%d does not divide %d" % (delta, n))
        if n // delta < 2:
            raise InvalidCoverMove("image curve needs at least two geometric punctures")
        F = cur.base
        prym = TorusFactor(F.label, "Prym[delta=%d]" % delta, F.degree * (delta - 1) * n // delta, None)
        new = SymbolicCurve(F, cur.s_spec, n // delta, "quotient of %s" % cur.label)
        step = BcpStep("P", delta=delta)
        return BcpChain(chain.origin_curve, chain.tower, chain.steps + (step,),
                        chain.prym + (prym,), chain.running + (new,))
    raise InvalidCoverMove("unknown cover move %r" % (kind,))


def replay(chain):
    """Rebuild a chain from its origin and steps (for replay-equality checks)."""
    out = start_chain(chain.origin_curve, chain.tower)
    for step, before in zip(chain.steps, chain.running):
        if step.kind == "BC":
            out = bc_successor(out, step.target)
        elif step.delta:
            out = p_successor(out, ("quotient", step.delta))
        else:
            out = p_successor(out, ("forget", list(step.forget)))
    return out


# enumeration

@dataclass(frozen=True)
class EnumeratedClass:
    torus: IsogenyClass
    n: int
    chain: BcpChain


def enumerate_bcp_tori(curve, tower, max_depth):
    """Breadth-first closure under BC moves and forget moves, up to max_depth."""
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    start = start_chain(curve, tower)
    found = {}
    seen = set()
    frontier = [start]
    for depth in range(max_depth + 1):
        nxt = []
        for chain in frontier:
            cls = chain.result
            if cls.key() not in found:
                found[cls.key()] = EnumeratedClass(cls, depth, chain)
            if depth == max_depth:
                continue
            for succ in _successors(chain):
                state = (succ.current.key(), tuple(sorted(f.key() for f in succ.prym)))
                if state in seen:
                    continue
                seen.add(state)
                nxt.append(succ)
        frontier = nxt
    return sorted(found.values(), key=lambda e: (e.n, e.torus.key()))


def _successors(chain):
    cur = chain.current
    i = member_index(chain.tower, cur.base)
    for j in range(i):
        try:
            yield bc_successor(chain, j)
        except NotDescendable:
            pass
    c = len(cur.orbits)
    for k in range(1, c):
        for idx in combinations(range(c), k):
            try:
                yield p_successor(chain, ("forget", list(idx)))
            except InvalidCoverMove:
                pass


def factor_text(f, symbols):
    ring = symbols.get(f.member, f.member)
    if f.piece == "Gm":
        return "Gm,R0" if ring == "R0" else "Res_{%s/R0} Gm,%s" % (ring, ring)
    return "Res_{%s/R0} %s" % (ring, f.piece) if ring != "R0" else f.piece


def class_text(cls, tower):
    symbols = ring_symbols(tower)
    order = {F.label: -i for i, F in enumerate(tower.chain)}
    fs = sorted(cls.factors, key=lambda f: (order.get(f.member, 0), f.piece))
    return " x ".join(factor_text(f, symbols) for f in fs)


def render_table(entries, tower):
    rows = [("n", "torus (up to isogeny)", "dim", "rank", "witness chain")]
    for e in entries:
        r = e.torus.rank_r0
        rows.append((str(e.n), class_text(e.torus, tower), str(e.torus.dim),
                     "?" if r is None else str(r), e.chain.describe()))
    widths = [max(len(r[k]) for r in rows) for k in range(5)]
    lines = []
    for k, r in enumerate(rows):
        lines.append(" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if k == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)


# ledger and verdicts

def cover_rank_gap(n_punctures, rank_j1, rank_gm, degree, delta):
    """Lower bound for the P-step contribution of a single-orbit quotient.

    Returns (gap, bound) with gap = degree * n_punctures - (rank_j1 + rank_gm + 1)
    and bound = (delta - 1) / delta * gap.
    """
    if delta < 1:
        raise DeltaDoesNotDivide("delta must be positive")
    if n_punctures % delta:
        raise DeltaDoesNotDivide("%d does not divide %d" % (delta, n_punctures))
    gap = degree * n_punctures - (rank_j1 + rank_gm + 1)
    return gap, Fraction(delta - 1, delta) * gap


def _profile(curve):
    if isinstance(curve, SymbolicCurve):
        return curve.count - 1, None
    p = jacobian_profile(curve)
    return p.dim, p.rank


def delta_ledger(chain):
    """Per-step rank deficiencies; their positive parts bound dim T - dim closure."""
    entries = []
    final = chain.current
    d0 = final.base.degree
    dim0, rank0 = _profile(final)
    entries.append(("0-BCP of %s" % final.label, None if rank0 is None else d0 * dim0 - rank0))
    # entries run from the final running curve back to the origin
    for k in range(len(chain.steps) - 1, -1, -1):
        step = chain.steps[k]
        cover, image = chain.running[k], chain.running[k + 1]
        if step.kind == "BC":
            entries.append((step.describe(), 0))
            continue
        d = cover.base.degree
        dim_c, rank_c = _profile(cover)
        if step.delta:
            _, bound = cover_rank_gap(cover.puncture_count(), rank_c,
                                      s_unit_rank(cover.base, cover.s_spec.sorted()), d, step.delta)
            entries.append((step.describe(), ceil(bound)))
            continue
        dim_i, rank_i = _profile(image)
        entries.append((step.describe(), d * (dim_c - dim_i) - (rank_c - rank_i)))
    lb = sum(max(0, v) for _, v in entries if v is not None)
    return DeltaLedger(tuple(entries), lb)


def obstruction_verdict(subject, curve=None, mode=UNCONDITIONAL, intersection_dim=None):
    """Evaluate the subgroup-obstruction inequality for a chain or bare torus data.

    subject is a BcpChain, an IsogenyClass, or a (dim, rank) pair.  For chains
    the intersection dimension is the degree of the field of the final running
    curve; for bare data it defaults to [K:Q] of the supplied curve's base.
    """
    lb = 0
    if isinstance(subject, BcpChain):
        cls = subject.result
        dim, rank = cls.dim, cls.rank_r0
        lb = delta_ledger(subject).lower_bound
        inter = subject.current.base.degree if intersection_dim is None else intersection_dim
    else:
        if isinstance(subject, IsogenyClass):
            dim, rank = subject.dim, subject.rank_r0
        else:
            dim, rank = subject
        if intersection_dim is None:
            if curve is None:
                raise ValueError("bare torus data needs a curve or an intersection dimension")
            intersection_dim = curve.base.degree
        inter = intersection_dim
    ev = {"dim_T": dim, "rank_T_R0": rank, "intersection_dim": inter, "ledger_lower_bound": lb}
    rank_gap = None if rank is None else dim - rank
    ev["unconditional"] = {
        "closure_upper": rank,
        "inequality": "%d <= %s - %s" % (inter, dim, "?" if rank is None else rank),
        "holds": rank_gap is not None and inter <= rank_gap,
        "ledger": "%d >= %d" % (lb, inter),
        "ledger_holds": lb >= inter,
    }
    leo = None if rank is None else min(rank, dim)
    ev["leopoldt"] = {
        "closure": leo,
        "inequality": "%d > %d - %s" % (inter, dim, "?" if leo is None else leo),
        "holds": leo is not None and inter > dim - leo,
    }
    if ev["unconditional"]["holds"] or lb >= inter:
        verdict = NO_OBSTRUCTION
    elif mode == LEOPOLDT and ev["leopoldt"]["holds"]:
        verdict = OBSTRUCTION_UNDER_LEOPOLDT
    else:
        verdict = INCONCLUSIVE
    closure_bound = leo if mode == LEOPOLDT else rank
    return ObstructionVerdict(mode, dim, rank, closure_bound, inter, verdict, lb, ev)


# the CM construction

@dataclass(frozen=True)
class CmWitness:
    curve: PuncturedCurve
    field: object               # totally real field generated by the moved punctures
    real_subfield: object
    cm_field: object
    dim: int
    rank: int
    verdict: ObstructionVerdict
    moved_poly: tuple           # minimal polynomial of the moved punctures over the real subfield


def cm_bcp_witness(K, q, subfields=None, s_spec=()):
    """Move the nontrivial qth roots of unity onto the real line via a CM subfield.

    For a CM subfield L of K, quadratic over a totally real M, the map
    x -> (beta x - conj(beta)) / (x - 1) with beta purely imaginary in L sends
    the unit circle to the real axis in every embedding.  The images of the
    nontrivial qth roots of unity generate a totally real field over M, so the
    Jacobian of the moved curve has rank at least its dimension.
    """
    if not is_prime(q) or q == 2:
        raise QNotPrime("q must be an odd prime, got %r" % (q,))
    if not isinstance(s_spec, SSpec):
        s_spec = sspec(s_spec)
    if subfields is None:
        subfields = [rational_field(), K] if K.degree > 1 else [K]
    cm = detect_cm_subfield(K, subfields)
    if not cm.found:
        raise NotCmField(cm.reason)
    if len(relative.factor(K, [[c] for c in cyclotomic(q)])) != 1:
        raise CyclotomicNotDisjoint("the %dth cyclotomic polynomial splits over %s" % (q, K.label))
    L, M = cm.witness, cm.totally_real_subfield
    A = L.arith
    mu = A.coerce(list(cm.embedding))
    m = M.degree
    theta = A.generator()
    beta = _imaginary_generator(A, theta, mu, m, L.degree)
    conj = A.neg(beta)
    P = [A.zero]
    for k in range(q):
        term = [A.one]
        for _ in range(k):
            term = pmul(A, term, [A.neg(beta), A.one])
        for _ in range(q - 1 - k):
            term = pmul(A, term, [A.neg(conj), A.one])
        P = [A.add(a, b) for a, b in zip(P + [A.zero] * (len(term) - len(P)), term)]
    coeffs = []
    for c in P:
        v = express_in_subfield(L, mu, c, m)
        if v is None:
            raise NotCmField("moved punctures are not defined over the real subfield")
        coeffs.append(M.arith.coerce(v))
    lead = M.arith.inv(coeffs[-1])
    coeffs = [M.arith.mul(lead, c) for c in coeffs]
    if M.degree == 1:
        field_ = field_from_rational_poly([c[0] for c in coeffs])
    else:
        field_ = absolute_field(M, coeffs)
    if not field_.is_totally_real():
        raise NotCmField("moved puncture field is not totally real")
    curve = make_curve(M, s_spec, coeffs, include_infinity=False,
                       label="P1/%s minus f(mu_%d - 1)" % (M.label, q), shape="Y_{CM,%d}" % q)
    S0 = s_spec.sorted()
    rank = s_unit_rank(field_, S0) - s_unit_rank(M, S0)
    dim = M.degree * (q - 2)
    verdict = obstruction_verdict((dim, rank), mode=LEOPOLDT, intersection_dim=M.degree)
    return CmWitness(curve, field_, M, L, dim, rank, verdict, tuple(tuple(c) for c in coeffs))


def _imaginary_generator(A, theta, mu, m, n):
    """theta + b/2 where theta^2 + b theta + c = 0 over the real subfield."""
    powers = [A.one]
    for _ in range(1, m):
        powers.append(A.mul(powers[-1], mu))
    cols = [A.mul(p, theta) for p in powers] + powers
    t2 = A.mul(theta, theta)
    rows = [[col[i] for col in cols] for i in range(n)]
    sol = solve(rows, [-x for x in t2])
    if sol is None:
        raise NotCmField("generator is not quadratic over the real subfield")
    b = A.zero
    for coef, p in zip(sol[:m], powers):
        b = A.add(b, A.mul(A.coerce(coef), p))
    return A.add(theta, A.mul(A.coerce(Fraction(1, 2)), b))
