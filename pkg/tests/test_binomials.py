import pytest

from binetkit import binomial, central_binomial


def test_basic_values():
    assert binomial(5, 2) == 10
    assert binomial(20, 10) == 184756
    assert binomial(0, 0) == 1


def test_zero_convention_below_diagonal():
    assert binomial(3, 5) == 0
    assert binomial(0, 1) == 0


def test_negative_arguments_rejected():
    with pytest.raises(ValueError):
        binomial(-1, 0)
    with pytest.raises(ValueError):
        binomial(3, -2)
    with pytest.raises(ValueError):
        central_binomial(-1)


def test_central_values():
    assert central_binomial(0) == 1
    assert central_binomial(1) == 2
    assert central_binomial(10) == 184756
    for j in range(0, 40):
        assert central_binomial(j) == binomial(2 * j, j)


def test_pascal_rule():
    for i in range(1, 61):
        for j in range(1, i + 1):
            assert binomial(i, j) == binomial(i - 1, j - 1) + binomial(i - 1, j)


def test_symmetry():
    for i in range(0, 61):
        for j in range(0, i + 1):
            assert binomial(i, j) == binomial(i, i - j)
