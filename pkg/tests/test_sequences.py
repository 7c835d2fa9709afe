from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from binetkit import (
    ALPHA,
    BETA,
    HoradamParams,
    QuadElement,
    fibonacci,
    horadam,
    lucas,
    lucas_uv,
    q_pow,
)


def test_fibonacci_base_values():
    assert fibonacci(0) == 0
    assert fibonacci(1) == 1
    assert fibonacci(10) == 55
    assert fibonacci(-5) == 5


def test_lucas_base_values():
    assert lucas(0) == 2
    assert lucas(1) == 1
    assert lucas(10) == 123
    assert lucas(-3) == -4


def test_recurrence_over_signed_range():
    for j in range(-200, 199):
        assert fibonacci(j + 2) == fibonacci(j + 1) + fibonacci(j)
        assert lucas(j + 2) == lucas(j + 1) + lucas(j)


def test_negation_sign_rules():
    for j in range(-200, 201):
        assert fibonacci(-j) == (-1) ** ((j - 1) % 2) * fibonacci(j)
        assert lucas(-j) == (-1) ** (j % 2) * lucas(j)


def test_horadam_examples():
    fib = HoradamParams(0, 1, 1, -1)
    assert horadam(5, fib) == 5
    luc = HoradamParams(2, 1, 1, -1)
    assert horadam(4, luc) == 7
    assert horadam(0, HoradamParams(mpq(3, 7), 1, 5, 2)) == mpq(3, 7)


def test_horadam_specializations_match_integer_sequences():
    fib = HoradamParams(0, 1, 1, -1)
    luc = HoradamParams(2, 1, 1, -1)
    for j in range(0, 101):
        assert horadam(j, fib) == fibonacci(j)
        assert horadam(j, luc) == lucas(j)


def test_horadam_negative_indices_extend_recurrence():
    params = HoradamParams(1, 3, 3, 1)
    for j in range(-40, 39):
        assert horadam(j + 2, params) == 3 * horadam(j + 1, params) - horadam(j, params)
    fib = HoradamParams(0, 1, 1, -1)
    for j in range(-50, 51):
        assert horadam(j, fib) == fibonacci(j)


def test_horadam_rejects_zero_q_and_zero_p():
    with pytest.raises(ValueError):
        HoradamParams(0, 1, 1, 0)
    with pytest.raises(ValueError):
        HoradamParams(0, 1, 0, -1)


def test_lucas_uv_examples():
    assert lucas_uv(5, 2, -1)[0] == 29  # Pell
    assert lucas_uv(3, 1, -2)[0] == 3  # Jacobsthal
    assert lucas_uv(0, 9, mpq(1, 3)) == (0, 2)


def test_lucas_uv_is_horadam_specialization():
    for j in range(-10, 30):
        u, v = lucas_uv(j, 2, -1)
        assert u == horadam(j, HoradamParams(0, 1, 2, -1))
        assert v == horadam(j, HoradamParams(2, 2, 2, -1))


def test_binet_cross_check_in_quad_field():
    sqrt5 = QuadElement(0, 1, 5)
    for j in range(-100, 101):
        aj = q_pow(ALPHA, j)
        bj = q_pow(BETA, j)
        assert (aj - bj) / sqrt5 == fibonacci(j)
        assert aj + bj == lucas(j)


def test_binet_coefficients_reconstruct_terms():
    params = HoradamParams(mpq(1, 2), 3, 4, 2)
    pair_a, pair_b = params.binet_coefficients()
    from binetkit import roots_of

    roots = roots_of(params.p, params.q)
    for j in range(0, 12):
        value = pair_a * q_pow(roots.tau, j) + pair_b * q_pow(roots.sigma, j)
        assert value == horadam(j, params)


@settings(max_examples=60, deadline=None)
@given(
    a=st.fractions(min_value=-5, max_value=5, max_denominator=9),
    b=st.fractions(min_value=-5, max_value=5, max_denominator=9),
    j=st.integers(min_value=-25, max_value=25),
)
def test_horadam_recurrence_property(a: Fraction, b: Fraction, j: int):
    params = HoradamParams(a, b, 3, 2)
    lhs = horadam(j + 2, params)
    assert lhs == 3 * horadam(j + 1, params) - 2 * horadam(j, params)


def test_concurrent_memo_tables_are_safe():
    from concurrent.futures import ThreadPoolExecutor

    from binetkit import hm_weight

    params = HoradamParams(1, 3, 3, 1)

    def work(seed: int):
        out = []
        for j in range(-80, 81, 7):
            out.append((fibonacci(j + seed), lucas(j - seed), horadam(j, params)))
        out.append(hm_weight(2, 40 + seed))
        return out

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(work, range(8)))
    for seed, got in enumerate(results):
        assert got == work(seed)
