import gmpy2
import pytest
from gmpy2 import mpq

from binetkit import (
    ALPHA,
    BETA,
    Ball,
    BallDomainError,
    ComparisonOutcome,
    QuadElement,
    ball_arccos,
    ball_arcsin,
    ball_arctan,
    ball_compare,
    ball_from_quad,
    ball_from_rational,
    ball_log,
    ball_sqrt,
    const_pi,
    cot_of_arccos,
    elem_fn,
    fibonacci,
    q_pow,
)
from binetkit.balls import ball_from_int_ratio


def test_rational_construction_contains_value():
    b = ball_from_rational(mpq(1, 3), 64)
    assert b.contains(mpq(1, 3))
    assert mpq(b.rad) <= mpq(2) ** (1 - 64) * mpq(1, 3)


def test_zero_and_representable_are_exact():
    assert ball_from_rational(0, 64).is_exact()
    b = ball_from_rational(184756, 64)
    assert b.is_exact() and b.contains(184756)


def test_int_ratio_construction_matches_exact():
    for num, den in [(1, 3), (-7, 11), (2**300 + 1, 3**200), (0, 5)]:
        b = ball_from_int_ratio(num, den, 128)
        assert b.contains(mpq(num, den))
        assert mpq(b.rad) <= mpq(2) ** -120
    with pytest.raises(ValueError):
        ball_from_int_ratio(1, 0, 64)


def test_pi_radius_contract_and_refinement():
    for prec in (64, 128, 256):
        p = const_pi(prec)
        assert mpq(p.rad) <= mpq(2) ** (4 - prec)
    assert const_pi(64).overlaps(const_pi(128))


def test_pi_against_arctan_identity():
    assert const_pi(128).overlaps(4 * ball_arctan(ball_from_rational(1, 128)))


def test_elementary_examples():
    quarter_pi = const_pi(128) / 4
    assert ball_arctan(ball_from_rational(1, 128)).overlaps(quarter_pi)
    lg = ball_log(ball_from_rational(1, 128))
    assert lg.contains(0)
    asin_half_alpha = ball_arcsin(ball_from_quad(ALPHA / 2, 128))
    assert asin_half_alpha.overlaps(const_pi(128) * mpq(3, 10))


def test_elem_fn_dispatch():
    x = ball_from_rational(2, 96)
    assert elem_fn("sqrt", x).overlaps(ball_sqrt(x))
    with pytest.raises(ValueError):
        elem_fn("tanh", x)


def test_quad_embedding():
    a = ball_from_quad(ALPHA, 128)
    assert a.contains(mpq(16180339887, 10**10)) or a.lo() > mpq(16180339887, 10**10)
    assert abs(float(a.mid) - 1.618033988749895) < 1e-12
    b = ball_from_quad(BETA, 128)
    assert abs(float(b.mid) + 0.6180339887498949) < 1e-12
    r = ball_from_quad(QuadElement(mpq(5, 7), 0, 5), 128)
    exact = ball_from_rational(mpq(5, 7), 128)
    assert r.overlaps(exact)
    with pytest.raises(ValueError):
        ball_from_quad(QuadElement(1, 1, 5), 8)


def test_arithmetic_containment():
    x = ball_from_rational(mpq(1, 3), 96)
    y = ball_from_rational(mpq(2, 7), 96)
    assert (x + y).contains(mpq(1, 3) + mpq(2, 7))
    assert (x - y).contains(mpq(1, 3) - mpq(2, 7))
    assert (x * y).contains(mpq(2, 21))
    assert (x / y).contains(mpq(7, 6))
    assert (x**3).contains(mpq(1, 27))
    assert (x ** -2).contains(9)
    assert (2 * x + 1).contains(mpq(5, 3))
    with pytest.raises(ZeroDivisionError):
        x / ball_from_rational(0, 96)


def test_refinement_overlap_for_all_operations():
    val = mpq(3, 7)
    for op in (
        lambda p: ball_from_rational(val, p) + ball_from_rational(1, p),
        lambda p: ball_from_rational(val, p) * ball_from_rational(val, p),
        lambda p: ball_from_rational(1, p) / ball_from_rational(val, p),
        lambda p: ball_sqrt(ball_from_rational(val, p)),
        lambda p: ball_log(ball_from_rational(val, p)),
        lambda p: ball_arctan(ball_from_rational(val, p)),
        lambda p: ball_arcsin(ball_from_rational(val, p)),
        lambda p: const_pi(p),
        lambda p: ball_from_quad(ALPHA, p),
    ):
        assert op(64).overlaps(op(128))


def test_compare_outcomes():
    a = ball_from_rational(mpq(1, 3), 128)
    assert ball_compare(a, a, mpq(1, 10**6)) is ComparisonOutcome.OVERLAP_WITHIN_TOL

    pi = const_pi(128)
    lhs = pi * pi / 5
    rhs = (pi**4) * mpq(41, 4100)
    assert mpq(lhs.rad) <= mpq(1, 10**10) and mpq(rhs.rad) <= mpq(1, 10**10)
    assert ball_compare(lhs, rhs, mpq(1, 10**6)) is ComparisonOutcome.DISJOINT_BEYOND_TOL

    wide = Ball(a.mid, gmpy2.mpfr(1), 128)
    assert ball_compare(wide, a, mpq(1, 1000)) is ComparisonOutcome.INCONCLUSIVE

    with pytest.raises(ValueError):
        ball_compare(a, a, 0)


def test_domain_errors_distinguish_definite_from_precision():
    neg = ball_from_rational(-2, 96)
    with pytest.raises(BallDomainError) as info:
        ball_sqrt(neg)
    assert info.value.definite

    straddle = ball_from_rational(mpq(1, 10**20), 96).inflate(mpq(1, 10**10))
    with pytest.raises(BallDomainError) as info:
        ball_log(straddle)
    assert not info.value.definite

    with pytest.raises(BallDomainError) as info:
        ball_arcsin(ball_from_rational(2, 96))
    assert info.value.definite

    near_one = ball_from_rational(1, 96).inflate(mpq(1, 1000))
    with pytest.raises(BallDomainError) as info:
        ball_arcsin(near_one)
    assert not info.value.definite


def test_arcsin_accepts_exact_endpoint():
    half_pi = const_pi(128) / 2
    assert ball_arcsin(ball_from_rational(1, 128)).overlaps(half_pi)


def test_lemma_values_for_arc_cosines():
    # arccos(phi/2) = pi/5 and arccos(-psi/2) = 2 pi/5 at 128 bits
    pi = const_pi(128)
    assert ball_arccos(ball_from_quad(ALPHA / 2, 128)).overlaps(pi / 5)
    assert ball_arccos(ball_from_quad(-BETA / 2, 128)).overlaps(pi * mpq(2, 5))


def test_cotangent_relations():
    cot_2pi5 = cot_of_arccos(ball_from_quad(-BETA / 2, 128))
    cot_pi5 = cot_of_arccos(ball_from_quad(ALPHA / 2, 128))
    coef = ball_from_quad(-q_pow(BETA, 3), 128)  # -psi^3 > 0
    assert cot_2pi5.overlaps(coef * cot_pi5)
    # direct radical form sqrt(phi^3/sqrt5)
    radical = ball_sqrt(ball_from_quad(QuadElement(1, mpq(2, 5), 5), 128))
    assert cot_pi5.overlaps(radical)
    assert cot_2pi5.overlaps(coef * radical)


def test_arctan_power_pairs():
    # arctan(phi^(2r)) + arctan(psi^(2r)) = pi/2, difference hits F(2r)
    pi = const_pi(128)
    for r in range(-5, 6):
        a = ball_arctan(ball_from_quad(q_pow(ALPHA, 2 * r), 128))
        b = ball_arctan(ball_from_quad(q_pow(BETA, 2 * r), 128))
        assert (a + b).overlaps(pi / 2)
        diff_target = ball_arctan(
            ball_from_quad(QuadElement(0, mpq(fibonacci(2 * r), 2), 5), 128)
        )
        assert (a - b).overlaps(diff_target)


def test_global_context_does_not_leak():
    saved = gmpy2.get_context().precision
    try:
        gmpy2.get_context().precision = 24
        hi = ball_from_quad(ALPHA, 256) * ball_log(ball_from_quad(ALPHA, 256))
    finally:
        gmpy2.get_context().precision = saved
    ref = ball_from_quad(ALPHA, 256) * ball_log(ball_from_quad(ALPHA, 256))
    assert str(hi.mid) == str(ref.mid)
    assert mpq(hi.rad) <= mpq(2) ** -240


def test_minimum_precision_enforced():
    with pytest.raises(ValueError):
        ball_from_rational(1, 8)
