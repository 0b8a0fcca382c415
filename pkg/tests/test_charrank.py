import cmath
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from catalog import prime_count_triples
from chabauty.charrank import (EVERYTHING, FINITE, INCONCLUSIVE, NO_SUBGROUP_OBSTRUCTION, PASS,
                               CharacterDatum, anisotropic_rank_bounds, classical_chabauty_verdict,
                               instance, norm_one_datum, places_representation, semidirect_rank,
                               subtorus_rank_abelian, sunit_prime_count, verify_main_rank_bound,
                               verify_no_subgroup_obstruction)
from chabauty.errors import (AlphaIsQthPower, NegativeMultiplicity, NotAbelianDeclared, QNotPrime,
                             UnsupportedGaloisShape)
from chabauty.numfield import factor_mod_p, parse_number_field, s_unit_rank
from chabauty.puncture import curve_from_points, make_curve


# floating-point oracle: explicit 2x2 matrices for the dihedral group of order 2q

def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def _rot(theta):
    c, s = cmath.cos(theta).real, cmath.sin(theta).real
    return [[c, -s], [s, c]]


FLIP = [[1.0, 0.0], [0.0, -1.0]]


def _close(a, b):
    return all(abs(a[i][j] - b[i][j]) < 1e-9 for i in range(2) for j in range(2))


def oracle_rank(q, mults):
    """(1/|G|) sum_g chi(g) * #{cosets of <flip> fixed by g}, in floating point."""
    elems = []
    for k in range(q):
        for e in range(2):
            elems.append((k, e))

    def faithful(k, e):
        m = _rot(2 * cmath.pi * k / q)
        return _matmul(m, FLIP) if e else m

    mats = {g: faithful(*g) for g in elems}
    cosets = []
    for g in elems:
        a, b = mats[g], _matmul(mats[g], FLIP)
        if not any(_close(a, c[0]) or _close(a, c[1]) for c in cosets):
            cosets.append((a, b))
    assert len(cosets) == q
    total = 0.0
    for (k, e) in elems:
        chi = 0.0
        for j, m in enumerate(mults, start=1):
            rho = _rot(2 * cmath.pi * j * k / q)
            if e:
                rho = _matmul(rho, FLIP)
            chi += m * (rho[0][0] + rho[1][1])
        fixed = sum(1 for c in cosets if any(_close(_matmul(mats[(k, e)], c[0]), x) for x in c))
        total += chi * fixed
    return total / (2 * q)


def test_semidirect_examples():
    assert semidirect_rank(5, [1, 1]) == (4, 2)
    assert semidirect_rank(3, [1]) == (2, 1)
    assert semidirect_rank(7, [2, 0, 1]) == (6, 3)
    assert semidirect_rank(5, [0, 0]) == (0, 0)


def test_semidirect_errors():
    with pytest.raises(QNotPrime):
        semidirect_rank(9, [1, 1, 1, 1])
    with pytest.raises(QNotPrime):
        semidirect_rank(2, [])
    with pytest.raises(NegativeMultiplicity):
        semidirect_rank(5, [1, -1])
    with pytest.raises(ValueError):
        semidirect_rank(5, [1])
    with pytest.raises(NegativeMultiplicity):
        CharacterDatum.make(("semidirect", 5), {1: -2})


@pytest.mark.parametrize("q", [3, 5, 7])
def test_semidirect_matches_matrix_oracle(q):
    for mults in product(range(4), repeat=(q - 1) // 2):
        dim, rank = semidirect_rank(q, list(mults))
        assert abs(oracle_rank(q, mults) - rank) < 1e-6
        assert dim == 2 * sum(mults)


@given(st.sampled_from([3, 5, 7, 11, 13]).flatmap(
    lambda q: st.tuples(st.just(q), st.lists(st.integers(0, 5), min_size=(q - 1) // 2,
                                             max_size=(q - 1) // 2))))
def test_rank_is_half_dimension(data):
    q, mults = data
    dim, rank = semidirect_rank(q, mults)
    assert 2 * rank == dim


def test_character_datum_dimension():
    d = CharacterDatum.make(("semidirect", 5), {1: 2, 2: 1})
    assert d.dimension == 6
    n = norm_one_datum([2, 2])
    assert n.dimension == 3


def test_abelian_rank_examples(Q, Qi, Qsqrt2, Qzeta5):
    assert subtorus_rank_abelian(Q, Qi, norm_one_datum([2])) == 0
    assert subtorus_rank_abelian(Q, Qsqrt2, norm_one_datum([2])) == 1
    assert subtorus_rank_abelian(Q, Qzeta5, norm_one_datum([4])) == 1
    # 11 splits completely in Q(zeta5)
    assert subtorus_rank_abelian(Q, Qzeta5, norm_one_datum([4]), [11]) == 4
    assert s_unit_rank(Qzeta5, [11]) - s_unit_rank(Q, [11]) == 4


@pytest.mark.parametrize("S0", [(), (2,), (3,), (5,), (3, 7), (11,), (2, 5, 13)])
def test_norm_one_rank_matches_unit_ranks(Q, Qi, Qsqrt2, Qzeta5, S0):
    for L, inv in [(Qi, [2]), (Qsqrt2, [2]), (Qzeta5, [4])]:
        disc_primes = {2} if L is not Qzeta5 else {5}
        if set(S0) & disc_primes:
            continue
        rank = subtorus_rank_abelian(Q, L, norm_one_datum(inv), S0)
        assert rank == s_unit_rank(L, S0) - s_unit_rank(Q, S0)
        if not S0:
            lo, hi = anisotropic_rank_bounds(Q, L.degree - 1)
            assert lo <= rank <= hi


def test_regular_representation_at_infinity(Qi):
    zeta8 = parse_number_field([1, 0, 0, 0, 1], "Q(zeta8)")
    psi = places_representation(Qi, zeta8, [2])
    assert psi == {(0,): 1, (1,): 1}
    Q = parse_number_field([0, 1], "Q")
    # one real place, ramified in Q(i): only the trivial character
    assert places_representation(Q, parse_number_field([1, 0, 1], "Q(i)"), [2]) == {(0,): 1, (1,): 0}
    # unramified in Q(sqrt2): the regular representation
    assert places_representation(Q, parse_number_field([-2, 0, 1], "Q(sqrt2)"), [2]) == \
        {(0,): 1, (1,): 1}
    with pytest.raises(UnsupportedGaloisShape):
        places_representation(Q, zeta8, [2, 2])


def test_places_representation_errors(Q, Qi, Qzeta5):
    with pytest.raises(NotAbelianDeclared):
        places_representation(Q, Qzeta5, [2])
    with pytest.raises(UnsupportedGaloisShape):
        places_representation(Q, Qzeta5, [2, 2])
    with pytest.raises(NotAbelianDeclared):
        subtorus_rank_abelian(Q, Qzeta5, CharacterDatum.make(("semidirect", 5), {1: 1}))


@pytest.mark.parametrize("triple", prime_count_triples())
def test_prime_count_matches_factorisation(Q, triple):
    q, alpha, p = triple
    rep = sunit_prime_count(Q, [p], q, alpha)
    f = [-alpha] + [0] * (q - 1) + [1]
    assert rep.total == sum(m for _, m in factor_mod_p(f, p))


def test_prime_count_examples(Q):
    # 2 is a cube mod 31 (order of 31 mod 3 is 1)
    assert sunit_prime_count(Q, [31], 3, 2).total == 3
    # 2 is not a cube mod 7
    assert sunit_prime_count(Q, [7], 3, 2).total == 1
    # p = q and totally ramified places count once
    assert sunit_prime_count(Q, [5], 5, 2).total == 1
    assert sunit_prime_count(Q, [2], 5, 2).total == 1
    # order of 11 mod 3 is 2: one place of degree 1 and one of degree 2
    assert sunit_prime_count(Q, [11], 3, 2).total == 2
    assert sunit_prime_count(Q, [11], 3, 2).by_prime() == {11: 2}
    # 2 has order 3 mod 7 and 3 is trivially a residue in GF(2)
    assert sunit_prime_count(Q, [2], 7, 3).total == 3


def test_main_bound_instances(Q, Qi):
    r = verify_main_rank_bound(instance(Q, (), 5, 1))
    assert (r.verdict, r.lhs, r.rhs) == (PASS, 1, Fraction(9, 4))
    r = verify_main_rank_bound(instance(Q, (2,), 13, 1))
    assert (r.verdict, r.lhs, r.rhs) == (PASS, 5, Fraction(33, 4))
    r = verify_main_rank_bound(instance(Qi, (), 7, 1))
    assert r.verdict == PASS and "CmSubfieldPresent" in r.hypothesis_flags
    assert r.lhs <= r.rhs
    d = r.to_dict()
    assert set(d) == {"kind", "instance", "verdict", "inequality", "hypothesis_flags", "witnesses"}


def test_main_bound_flags_non_power(Q):
    r = verify_main_rank_bound(instance(Q, (), 5, 2))
    assert "AlphaNotQthPower" in r.hypothesis_flags


def test_no_subgroup_verdicts(Q):
    r = verify_no_subgroup_obstruction(instance(Q, (), 5, 2))
    assert (r.verdict, r.lhs, r.rhs) == (NO_SUBGROUP_OBSTRUCTION, 2, 1)
    r = verify_no_subgroup_obstruction(instance(Q, (), 3, 2))
    # the comparison is strict: a margin equal to the degree does not pass
    assert (r.verdict, r.lhs, r.rhs) == (INCONCLUSIVE, 1, 1)
    assert r.witnesses["failing_class"]["m"] == 1
    r = verify_no_subgroup_obstruction(instance(Q, (5,), 5, 2))
    assert r.verdict == NO_SUBGROUP_OBSTRUCTION
    with pytest.raises(AlphaIsQthPower):
        verify_no_subgroup_obstruction(instance(Q, (), 5, 32))


def test_no_subgroup_correction_counts_split_primes(Q):
    # 2 is a fifth power mod 151, so the place above 151 splits into five
    r = verify_no_subgroup_obstruction(instance(Q, (151,), 5, 2))
    assert r.witnesses["correction"] == 4
    assert r.verdict == INCONCLUSIVE
    # but not mod 11, where x^5 - 2 stays irreducible
    r = verify_no_subgroup_obstruction(instance(Q, (11,), 5, 2))
    assert r.witnesses["correction"] == 0


def test_instance_validation(Q):
    with pytest.raises(QNotPrime):
        instance(Q, (), 6)
    with pytest.raises(ValueError):
        instance(Q, (), 5, 1, 0)


def test_classical_verdicts(Q, Qcbrt2):
    X = curve_from_points(Q, [], [0, 1])
    assert classical_chabauty_verdict(Q, [], X).verdict == FINITE
    Y = make_curve(Q, [], [1, 0, 1], True)
    idx = [k for k, o in enumerate(Y.orbits) if o.degree == 2]
    r = classical_chabauty_verdict(Q, [], Y, galois={idx[0]: [2]})
    assert r.verdict == FINITE
    assert (r.witnesses["witness"]["rank"], r.witnesses["witness"]["dim"]) == (0, 1)
    norm = [f for f in r.witnesses["catalog"] if f["factor"].startswith("N(")]
    assert norm[0]["character_rank"] == norm[0]["rank"] == 0
    Z = make_curve(Qcbrt2, [], [-2, 0, 1], True)
    assert classical_chabauty_verdict(Qcbrt2, [], Z).verdict == EVERYTHING


def test_classical_rejects_wrong_base(Q, Qi):
    X = curve_from_points(Qi, [], [0, 1])
    with pytest.raises(ValueError):
        classical_chabauty_verdict(Q, [], X)
