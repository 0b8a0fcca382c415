from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chabauty.errors import (EvenPrimeUnsupported, GeneratorNotCoprime, NonSplitCompletion,
                             NotOneUnit, PrecisionExhausted)
from chabauty.numfield import parse_number_field
from chabauty.padic import (LogVector, PAdicInt, closure_dimension, hensel_roots, log_unit,
                            padic_log, unit_log_matrix, valuation)


def series_log(x, p, N, terms=120):
    """Truncated log series in exact rationals, reduced mod p^N term by term."""
    z = Fraction(x) - 1
    m = p ** N
    total = 0
    for k in range(1, terms + 1):
        t = z ** k / k
        assert t.denominator % p != 0
        total += (-1) ** (k + 1) * t.numerator * pow(t.denominator, -1, m)
    return total % m


def test_log_of_six_mod_125():
    assert padic_log(PAdicInt.of(5, 3, 6)).residue == 55
    assert series_log(6, 5, 3) == 55


@pytest.mark.parametrize("x,p,N", [(6, 5, 3), (8, 7, 6), (1 + 3 ** 2, 3, 9), (Fraction(1, 6), 5, 8),
                                   (1 + 11 * 4, 11, 5), (26, 5, 10)])
def test_log_matches_series(x, p, N):
    assert padic_log(PAdicInt.of(p, N, x)).residue == series_log(x, p, N)


def test_log_of_one_is_zero():
    assert padic_log(PAdicInt.of(7, 5, 1)).is_zero()


def test_log_doubles_on_squares():
    x = PAdicInt.of(5, 6, 6)
    assert padic_log(x * x).residue == (2 * padic_log(x)).residue


@given(st.sampled_from([3, 5, 7, 11]), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6),
       st.integers(2, 8))
def test_log_is_a_homomorphism(p, a, b, N):
    x = PAdicInt.of(p, N, 1 + p * a)
    y = PAdicInt.of(p, N, 1 + p * b)
    assert padic_log(x * y).residue == (padic_log(x) + padic_log(y)).residue


def test_log_valuation_of_principal_unit():
    # log(1 + p^k u) has valuation exactly k for odd p
    for k in range(1, 5):
        assert padic_log(PAdicInt.of(5, 8, 1 + 5 ** k * 2)).valuation() == k


def test_log_errors():
    with pytest.raises(NotOneUnit):
        padic_log(PAdicInt.of(5, 4, 2))
    with pytest.raises(EvenPrimeUnsupported):
        padic_log(PAdicInt.of(2, 4, 3))
    with pytest.raises(PrecisionExhausted):
        padic_log(PAdicInt.of(5, 4, 6), 6)
    with pytest.raises(PrecisionExhausted):
        PAdicInt(5, 0, 1)
    with pytest.raises(GeneratorNotCoprime):
        PAdicInt.of(5, 4, Fraction(1, 5))


def test_padic_arithmetic():
    a, b = PAdicInt.of(7, 4, 10), PAdicInt.of(7, 3, 5)
    assert (a + b).N == 3 and (a + b).residue == 15
    assert (a * b).residue == 50
    assert (a - a).is_zero()
    assert PAdicInt.of(7, 4, 49 * 3).divide_by(49).residue == 3
    assert PAdicInt.of(7, 4, 49 * 3).divide_by(49).N == 2
    with pytest.raises(PrecisionExhausted):
        PAdicInt.of(7, 4, 3).divide_by(7)
    assert valuation(Fraction(50, 3), 5) == 2
    assert valuation(Fraction(3, 25), 5) == -2


def test_log_unit_frozen_values():
    assert [log_unit(g, 5, 8).residue for g in (2, 3)] == [190335, 139595]


def test_log_unit_matches_series():
    for g in (2, 3, Fraction(2, 3), 7):
        expected = series_log(Fraction(g) ** 4, 5, 8) * pow(4, -1, 5 ** 8) % 5 ** 8
        assert log_unit(g, 5, 8).residue == expected


def test_unit_log_matrix_rows():
    rows = unit_log_matrix([2, 4, 1], 5, 8)
    assert all(isinstance(r, LogVector) for r in rows)
    a, b, c = (r.coordinates[0].residue for r in rows)
    assert b == 2 * a % 5 ** 8
    assert c == 0


def test_closure_dimension_over_rationals():
    M = unit_log_matrix([2, 3], 5, 10)
    assert closure_dimension(M, 5, 10) == (1, True)
    assert closure_dimension(unit_log_matrix([1], 5, 10), 5, 10) == (0, True)


def test_closure_dimension_real_quadratic():
    K = parse_number_field([-2, 0, 1], "Q(sqrt2)")
    M = unit_log_matrix([[1, 1], [-1, 0], [3, 0]], 7, 8, field=K)
    assert len(M[0].coordinates) == 2
    assert closure_dimension(M, 7, 8) == (2, True)
    with pytest.raises(NonSplitCompletion):
        unit_log_matrix([[1, 1]], 5, 8, field=K)


def test_hensel_roots_square_roots_of_two():
    roots = hensel_roots([-2, 0, 1], 7, 6)
    assert len(roots) == 2
    for r in roots:
        assert (r * r - 2) % 7 ** 6 == 0


@given(st.lists(st.lists(st.integers(-50, 50), min_size=3, max_size=3), min_size=1, max_size=4))
def test_closure_at_most_ambient(rows):
    dim, _ = closure_dimension(rows, 5, 6)
    assert dim <= min(len(rows), 3)


def test_closure_strict_mode():
    assert closure_dimension([[5 ** 6, 0]], 5, 8) == (1, False)
    with pytest.raises(PrecisionExhausted):
        closure_dimension([[5 ** 6, 0]], 5, 8, strict=True)
    with pytest.raises(ValueError):
        closure_dimension([], 5, 8)


def test_matrix_errors():
    with pytest.raises(GeneratorNotCoprime):
        unit_log_matrix([5], 5, 6)
    with pytest.raises(EvenPrimeUnsupported):
        unit_log_matrix([3], 2, 6)
