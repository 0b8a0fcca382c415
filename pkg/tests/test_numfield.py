import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chabauty import gfp
from chabauty.errors import (IndexObstruction, InvalidEmbedding, NotMonic, Reducible,
                             RelativeReducible, ZeroModP, ZeroPolynomial)
from chabauty.numfield import (absolute_field, check_embedding, detect_cm_subfield,
                               factor_mod_p, parse_number_field, rational_field,
                               s_unit_rank, same_field_invariants, signature,
                               splitting_profile, tower)
from chabauty.poly import count_real_roots, qgcd, qderiv, qdivmod
from chabauty.zfactor import factor_z


# construction

def test_gaussian_field_signature():
    F = parse_number_field([1, 0, 1])
    assert (F.degree, F.signature) == (2, (0, 1))


def test_cube_root_two_signature():
    F = parse_number_field([-2, 0, 0, 1])
    assert (F.degree, F.signature) == (3, (1, 1))


def test_reducible_reports_linear_witness():
    with pytest.raises(Reducible) as exc:
        parse_number_field([-1, 0, 1])
    w = exc.value.witness
    assert len(w) == 2 and Fraction(w[0], w[1]) in (-1, 1)


def test_reducible_without_rational_root():
    # (x^2 + 1)(x^2 + 2) has no rational root
    with pytest.raises(Reducible):
        parse_number_field([2, 0, 3, 0, 1])


def test_not_monic_and_zero():
    with pytest.raises(NotMonic):
        parse_number_field([1, 0, 2])
    with pytest.raises(ZeroPolynomial):
        parse_number_field([0, 0])
    with pytest.raises(ZeroPolynomial):
        parse_number_field([])


def test_signature_examples():
    assert signature(rational_field()) == (1, 0)
    assert parse_number_field([-1, 1]).signature == (1, 0)
    assert parse_number_field([-2, 0, 1]).signature == (2, 0)
    assert parse_number_field([1, 1, 1, 1, 1]).signature == (0, 2)


def _descartes_variations(p):
    signs = [c for c in p if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _compose_interval(f, a, b):
    """(x + 1)^n f((a x + b) / (x + 1)): roots in (a, b) become positive roots."""
    n = len(f) - 1
    out = [Fraction(0)] * (n + 1)
    for i, c in enumerate(f):
        # c (a x + b)^i (x + 1)^(n - i)
        term = [Fraction(c)]
        for _ in range(i):
            term = _mul(term, [Fraction(b), Fraction(a)])
        for _ in range(n - i):
            term = _mul(term, [Fraction(1), Fraction(1)])
        out = [x + y for x, y in zip(out, term + [0] * (n + 1 - len(term)))]
    return out


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _evalq(f, x):
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _bisection_count(f):
    """Real roots of f by Descartes-rule bisection on exact rational intervals."""
    f = [Fraction(c) for c in f]
    g = qgcd(f, qderiv(f))
    if len(g) > 1:
        f = qdivmod(f, g)[0]
    bound = 1 + max(abs(c / f[-1]) for c in f[:-1]) if len(f) > 1 else 1
    count = 0
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        v = _descartes_variations(_compose_interval(f, a, b))
        if v == 0:
            continue
        if v == 1:
            count += 1
            continue
        m = (a + b) / 2
        if _evalq(f, m) == 0:
            count += 1
        stack.append((a, m))
        stack.append((m, b))
    return count


def test_sturm_count_matches_bisection_on_random_polynomials():
    rng = random.Random(20261017)
    for _ in range(20):
        deg = rng.randint(1, 6)
        f = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        assert count_real_roots(f) == _bisection_count(f), f


# factorization mod p

def test_factor_mod_p_examples():
    assert factor_mod_p([-2, 0, 0, 1], 5) == [(1, 1), (2, 1)]
    assert factor_mod_p([1, 0, 1], 2) == [(1, 2)]
    # x^7 - 3 = (x + 1)(x^3 + x + 1)(x^3 + x^2 + 1) mod 2
    assert factor_mod_p([-3, 0, 0, 0, 0, 0, 0, 1], 2) == [(1, 1), (3, 1), (3, 1)]
    with pytest.raises(ZeroModP):
        factor_mod_p([2, 4], 2)


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=9),
       st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_factorization_mod_p_multiplies_back(coeffs, p):
    f = gfp.trim([c % p for c in coeffs], p)
    if len(f) < 2:
        return
    lc, facs = gfp.factor(f, p)
    prod = [lc]
    for g, m in facs:
        assert g[-1] == 1
        for _ in range(m):
            prod = gfp.mul(prod, g, p)
    assert gfp.trim(prod, p) == f
    for g, _ in facs:
        assert gfp.is_irreducible(g, p)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=4), min_size=1, max_size=3))
def test_integer_factorization_multiplies_back(polys):
    f = [1]
    for g in polys:
        if not any(g[1:]):
            continue
        f = [int(c) for c in _mul([Fraction(x) for x in f], [Fraction(x) for x in g])]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    if len(f) < 2:
        return
    unit, facs = factor_z(f)
    prod = [Fraction(unit)]
    for g, m in facs:
        for _ in range(m):
            prod = _mul(prod, [Fraction(c) for c in g])
    assert [Fraction(c) for c in f] == prod


# splitting and ranks

def test_splitting_profiles(Qi, Qcbrt2):
    sp = splitting_profile(Qi, 5)
    assert sp.places == 2 and sorted(sp.residue_degrees) == [1, 1] and sp.exact
    sp = splitting_profile(Qcbrt2, 5)
    assert sp.places == 2 and sorted(sp.residue_degrees) == [1, 2]
    with pytest.raises(IndexObstruction):
        splitting_profile(Qi, 2)


@given(st.sampled_from([([1, 0, 1], 0), ([-2, 0, 0, 1], 0), ([1, 1, 1, 1, 1], 0), ([-2, 0, 0, 0, 1], 0)]),
       st.sampled_from([3, 7, 11, 13, 17, 19, 23, 29]))
def test_splitting_degrees_sum_to_field_degree(data, p):
    F = parse_number_field(data[0])
    if F.poly_discriminant % p == 0:
        return
    assert sum(splitting_profile(F, p).residue_degrees) == F.degree


def test_s_unit_rank_examples(Q, Qsqrt2, Qzeta5):
    assert s_unit_rank(Q, [2, 3]) == 2
    assert s_unit_rank(Qsqrt2, []) == 1
    assert s_unit_rank(Qzeta5, []) == 1


@given(st.sets(st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19])))
def test_s_unit_rank_over_rationals_counts_primes(S0):
    assert s_unit_rank(rational_field(), sorted(S0)) == len(S0)


# towers and CM detection

def test_tower_embedding_is_validated(Q, Qsqrt2, Qfourth2):
    tower([Q, Qsqrt2, Qfourth2], [[0], [0, 0, 1]])
    with pytest.raises(InvalidEmbedding):
        tower([Q, Qsqrt2, Qfourth2], [[0], [0, 1]])
    assert check_embedding(Qsqrt2, Qfourth2, [0, 0, 1])


def test_cm_detection(Q, Qi, Qcbrt2, Qzeta5):
    v = detect_cm_subfield(Qcbrt2, [Q])
    assert not v.found
    v = detect_cm_subfield(Qi, [Q, Qi])
    assert v.found and v.witness.label == "Q(i)"
    golden = parse_number_field([-1, -1, 1], "Q(sqrt5)")
    # (1 + sqrt5)/2 = -(z^2 + z^3) for a primitive fifth root z
    v = detect_cm_subfield(Qzeta5, [Q, (golden, [0, 0, -1, -1]), Qzeta5])
    assert v.found and v.witness.label == "Q(zeta5)"
    assert v.totally_real_subfield.label == "Q(sqrt5)"
    with pytest.raises(InvalidEmbedding):
        detect_cm_subfield(Qzeta5, [(golden, [0, 1, 0, 0])])


# absolute fields

def test_absolute_field_examples(Q, Qi, Qsqrt2):
    A = absolute_field(Q, [-2, 0, 1])
    assert A.degree == 2 and A.signature == (2, 0)
    B = absolute_field(Qi, [-2, 0, 1])
    assert B.degree == 4 and B.signature == (0, 2)
    C = absolute_field(Qsqrt2, [1, 0, 1])
    assert C.degree == 4 and C.signature == (0, 2)
    assert same_field_invariants(B, C, primes=(5, 7))
    with pytest.raises(RelativeReducible):
        absolute_field(Qsqrt2, [-2, 0, 1])


@given(st.sampled_from([[-3, 0, 1], [1, 0, 1], [-5, 0, 1], [-2, 0, 0, 1], [1, 1, 1]]),
       st.sampled_from([[1, 0, 1], [-2, 0, 1], [1, 1, 1, 1, 1]]))
def test_absolute_degree_is_multiplicative(rel, base_poly):
    base = parse_number_field(base_poly)
    try:
        L = absolute_field(base, rel)
    except RelativeReducible:
        return
    assert L.degree == base.degree * (len(rel) - 1)
    assert L.r1 + 2 * L.r2 == L.degree
