from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from binetkit import (
    ALPHA,
    BETA,
    SQRT5,
    QuadElement,
    fibonacci,
    lucas,
    q_arith,
    q_pow,
    roots_of,
)


def test_golden_pair_from_roots():
    pair = roots_of(1, -1)
    assert pair.tau == ALPHA
    assert pair.sigma == BETA
    assert pair.tau - pair.sigma == SQRT5


def test_pell_roots():
    # tau = 1 + sqrt(2), represented as 1 + (1/2) sqrt(8) over D = 8
    pair = roots_of(2, -1)
    assert pair.tau == QuadElement(1, mpq(1, 2), 8)
    assert pair.sigma == QuadElement(1, mpq(-1, 2), 8)
    assert pair.tau * pair.tau == 2 * pair.tau + 1  # x^2 = 2x + 1


def test_vieta_relations_across_parameters():
    for p, q in [(1, -1), (2, -1), (1, -2), (3, 1), (5, 4), (mpq(7, 2), mpq(1, 3))]:
        pair = roots_of(p, q)
        assert pair.tau * pair.sigma == mpq(q)
        assert pair.tau + pair.sigma == mpq(p)
        assert pair.tau - pair.sigma == QuadElement(0, 1, mpq(p) ** 2 - 4 * mpq(q))


def test_degenerate_discriminant_rejected():
    with pytest.raises(ValueError):
        roots_of(2, 1)  # p^2 - 4q = 0
    with pytest.raises(ValueError):
        roots_of(1, 1)  # negative


def test_arithmetic_examples():
    assert ALPHA * BETA == -1
    assert ALPHA + BETA == 1
    assert ALPHA - BETA == SQRT5
    assert q_arith(ALPHA, BETA, "mul") == QuadElement(-1, 0, 5)
    assert q_arith(ALPHA, BETA, "add") == QuadElement(1, 0, 5)
    assert q_arith(ALPHA, BETA, "sub") == SQRT5
    assert q_arith(ALPHA, ALPHA, "conj") == BETA


def test_unknown_operation_rejected():
    with pytest.raises(ValueError):
        q_arith(ALPHA, BETA, "pow")


def test_mixed_discriminants_error():
    with pytest.raises(ValueError):
        ALPHA + QuadElement(1, 1, 8)
    with pytest.raises(ValueError):
        q_arith(ALPHA, QuadElement(0, 1, 2), "mul")


def test_division_and_inversion():
    assert (ALPHA / ALPHA) == 1
    assert ALPHA * ALPHA.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        ALPHA / QuadElement(0, 0, 5)
    # zero divisor over a square discriminant is rejected too
    with pytest.raises(ZeroDivisionError):
        QuadElement(3, -1, 9).inverse()


def test_power_examples():
    assert q_pow(ALPHA, 2) == QuadElement(mpq(3, 2), mpq(1, 2), 5)
    assert q_pow(ALPHA, 10) == QuadElement(mpq(123, 2), mpq(55, 2), 5)
    assert q_pow(ALPHA, -1) == -BETA
    assert q_pow(ALPHA, 0) == 1


def test_powers_encode_sequence_values():
    for j in range(-100, 101):
        assert q_pow(ALPHA, j) == QuadElement(mpq(lucas(j), 2), mpq(fibonacci(j), 2), 5)


def test_reduction_of_two_alpha_cubed_plus_one():
    a3 = q_pow(ALPHA, 3)
    b3 = q_pow(BETA, 3)
    assert 2 * a3 + 1 == a3 * SQRT5
    assert 2 * b3 + 1 == -(b3 * SQRT5)


def test_cubic_shift_reductions():
    # 3 phi^r -+ psi^(r+3) against the L/F combinations, r in [-30, 30]
    b3 = q_pow(BETA, 3)
    for r in range(-30, 31):
        ar = q_pow(ALPHA, r)
        br3 = q_pow(BETA, r + 3)
        assert 3 * ar - br3 == lucas(r + 1) * SQRT5 - lucas(r - 1)
        assert 3 * ar + br3 == SQRT5 * (fibonacci(r + 1) * SQRT5 - fibonacci(r - 1))
        # the 6-shift variants collapse onto -psi^3 times a single value
        ar6 = q_pow(BETA, r + 6)
        assert ar - ar6 == -(b3 * lucas(r + 3))
        assert ar + ar6 == -(b3 * fibonacci(r + 3) * SQRT5)


@settings(max_examples=80, deadline=None)
@given(
    f=st.fractions(min_value=-9, max_value=9, max_denominator=12),
    g=st.fractions(min_value=-9, max_value=9, max_denominator=12),
    s=st.integers(min_value=-20, max_value=20),
)
def test_weighted_power_combination(f: Fraction, g: Fraction, s: int):
    lhs = q_pow(ALPHA, s) * f + q_pow(BETA, s) * g
    rhs = mpq(lucas(s), 2) * (f + g) + QuadElement(0, mpq(fibonacci(s), 2), 5) * (f - g)
    assert lhs == rhs


def test_canonical_lowest_terms():
    x = QuadElement(mpq(2, 4), mpq(6, 9), 5)
    assert x.a == mpq(1, 2) and x.b == mpq(2, 3)


def test_rational_view():
    x = QuadElement(7, 0, 5)
    assert x.is_rational() and x.to_rational() == 7
    with pytest.raises(ValueError):
        ALPHA.to_rational()
