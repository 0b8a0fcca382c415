from fractions import Fraction
from itertools import combinations

import pytest

from chabauty.charrank import INCONCLUSIVE, NO_SUBGROUP_OBSTRUCTION
from chabauty.errors import BoxTooSmall, EvenPrimeUnsupported, GeneratorNotCoprime
from chabauty.sieve import (CONFIRMED, UnitGroupImage, alpha_representatives,
                            curve_point, exhaustive_solutions, image_of_point, s_unit_exponents,
                            skolem_sieve, solve_sunit_desk)

F = Fraction


def brute_solutions(primes, box):
    """Double loop over the box, independent of the set lookup in the library."""
    vals = []
    for exps in _exps(len(primes), box):
        v = F(1)
        for p, a in zip(primes, exps):
            v *= F(p) ** a
        vals += [v, -v]
    out = set()
    for x in vals:
        for y in vals:
            if x + y == 1:
                out.add((x, y))
    return sorted(out)


def _exps(n, box):
    if n == 0:
        yield ()
        return
    for rest in _exps(n - 1, box):
        for a in range(-box, box + 1):
            yield rest + (a,)


def test_empty_S_has_no_solutions(Q):
    assert skolem_sieve(Q, [], 3, 6).pairs() == []
    assert exhaustive_solutions([]) == []


def test_two_only(Q):
    r = skolem_sieve(Q, [2], 3, 10)
    assert r.pairs() == [(F(-1), F(2)), (F(1, 2), F(1, 2)), (F(2), F(-1))]
    assert r.surviving_unconfirmed == 0


def test_two_and_three_matches_oracle(Q):
    r = skolem_sieve(Q, [2, 3], 5, 10)
    assert r.pairs() == exhaustive_solutions([2, 3])
    assert len(r.pairs()) == 21
    assert r.closure == (1, True)
    assert r.exhaustive_bound_used == 12


def test_brute_oracle_agrees_with_set_lookup():
    for primes in ([2], [2, 3], [3, 5]):
        assert brute_solutions(primes, 5) == exhaustive_solutions(primes, 5)


SUBSETS = [list(c) for k in range(4) for c in combinations([2, 3, 5], k)]


@pytest.mark.parametrize("S0", SUBSETS, ids=lambda s: "S" + "_".join(map(str, s)))
@pytest.mark.parametrize("p", [7, 11])
@pytest.mark.parametrize("N", [6, 8])
def test_sieve_is_sound(Q, S0, p, N):
    box = 8
    r = skolem_sieve(Q, S0, p, N, box)
    assert r.pairs() == exhaustive_solutions(S0, box)
    for s in r.confirmed_solutions:
        assert s.x + s.y == 1
        assert s_unit_exponents(s.x, S0) is not None
        assert s_unit_exponents(s.y, S0) is not None


def test_every_solution_survives(Q):
    # no true solution is discarded by the congruence step
    r = skolem_sieve(Q, [2, 3], 7, 4, 6)
    survivors = set(r.surviving_classes)
    m = 7 ** 4
    for x, _ in exhaustive_solutions([2, 3], 6):
        assert x.numerator * pow(x.denominator, -1, m) % m in survivors


def test_box_too_small(Q):
    # 1 - 2^5 = -31 is no S-unit, but 1 - 3 = -2 and 1 + 8 = 9 = 3^2 escape a box of 1
    with pytest.raises(BoxTooSmall):
        skolem_sieve(Q, [2, 3], 5, 6, 1)


def test_sieve_errors(Q, Qi):
    with pytest.raises(GeneratorNotCoprime):
        skolem_sieve(Q, [2, 5], 5, 6)
    with pytest.raises(EvenPrimeUnsupported):
        skolem_sieve(Q, [3], 2, 6)
    with pytest.raises(ValueError):
        skolem_sieve(Q, [3], 9, 6)
    with pytest.raises(Exception):
        skolem_sieve(Qi, [3], 5, 6)


def test_unit_group_image():
    G = UnitGroupImage([2], 5, 4)
    # 2 is a primitive root mod 25, so it generates everything
    assert all(G.contains(u) for u in range(1, 200) if u % 5)
    H = UnitGroupImage([4], 5, 4)
    assert H.contains(16) and not H.contains(2)
    assert not UnitGroupImage([6], 5, 3).contains(2)
    a, b = G.dlog(2)
    assert pow(G.g, a, 5) == 2


def test_s_unit_exponents():
    assert s_unit_exponents(F(-9, 8), [2, 3]) == [-3, 2]
    assert s_unit_exponents(F(5), [2, 3]) is None
    assert s_unit_exponents(0, [2]) is None


def test_curve_points_round_trip():
    for x in (F(2), F(-1), F(1, 2), F(-3, 8), F(81, 16)):
        alpha, t = curve_point(x, [2, 3], 5)
        assert image_of_point(alpha, t, 5) == x
        assert alpha in [a for a, _ in alpha_representatives([2, 3], 5)]


def test_alpha_representatives_count():
    assert len(alpha_representatives([2, 3], 5)) == 25
    assert alpha_representatives([], 3) == [(1, ())]


def test_desk_two_and_three():
    rep = solve_sunit_desk({"S0": [2, 3], "q": 5, "p": 5, "N": 10, "box": 12})
    assert rep.status == CONFIRMED
    assert rep.solutions == rep.oracle
    assert len(rep.solutions) == 21
    assert len(rep.curves) == 25
    verdicts = {c.alpha: c.verdict for c in rep.curves}
    assert verdicts[2] == INCONCLUSIVE
    assert verdicts[6] == NO_SUBGROUP_OBSTRUCTION
    # every solution is a point of exactly one curve
    assert sum(len(c.points) for c in rep.curves) == 21


def test_desk_small_cases():
    assert solve_sunit_desk({"S0": []}).solutions == []
    rep = solve_sunit_desk({"S0": [2]})
    assert rep.solutions == [(F(-1), F(2)), (F(1, 2), F(1, 2)), (F(2), F(-1))]
    assert rep.status == CONFIRMED
    assert rep.parameters["p"] == 3


def test_desk_rejects_even_q():
    with pytest.raises(ValueError):
        solve_sunit_desk({"S0": [2], "q": 2})


def test_precision_from_environment(monkeypatch):
    monkeypatch.setenv("CHABAUTY_PRECISION", "6")
    rep = solve_sunit_desk({"S0": [2]})
    assert rep.parameters["N"] == 6
    assert rep.status == CONFIRMED
