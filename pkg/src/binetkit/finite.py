"""Exact evaluation of both sides of every finite summation identity.

Each ``*_sides`` function computes the left and right side of one
identity as exact rationals (or exact quadratic-field elements for the
generic weighted-power identity) and reports whether they agree.  No
floating point is involved anywhere: equality means equality.

Conventions: empty sums are 0, sequence values at negative indices come
from the sign rules / backward recurrence in :mod:`binetkit.sequences`,
and reciprocals 1/C(n, j) are formed only for j <= n (never of a zero
binomial).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Union

from gmpy2 import mpq

from .binomials import binomial
from .quadratic import QuadElement
from .sequences import HoradamParams, fibonacci, horadam, lucas, lucas_uv

Kind = Literal["F", "L"]
Variant = Literal["plain", "alt"]
FieldValue = Union[mpq, QuadElement]

__all__ = [
    "SidePair",
    "FiniteParams",
    "eq1_sides",
    "gould_sides",
    "thm1_sides",
    "thm2_sides",
    "thm3_sides",
    "horadam_sides",
    "thm4_sides",
]


@dataclass(frozen=True)
class SidePair:
    """Exactly evaluated left and right side of one identity instance."""

    lhs: FieldValue
    rhs: FieldValue

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class FiniteParams:
    """Parameter bundle for the finite identities; unused fields stay None."""

    n: int
    s: Optional[int] = None
    r: Optional[int] = None
    kind: Optional[Kind] = None
    variant: Optional[Variant] = None
    horadam: Optional[HoradamParams] = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")


def _seq(kind: Kind):
    if kind == "F":
        return fibonacci
    if kind == "L":
        return lucas
    raise ValueError(f"kind must be 'F' or 'L', got {kind!r}")


def eq1_sides(n: int) -> SidePair:
    """sum_{j=0..n} 1/C(n,j)  vs  (n+1)/2^n * sum_{j=0..n} 2^j/(j+1)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    lhs = sum(mpq(1, binomial(n, j)) for j in range(n + 1))
    rhs = mpq(n + 1, 2**n) * sum(mpq(2**j, j + 1) for j in range(n + 1))
    return SidePair(mpq(lhs), mpq(rhs))


def gould_sides(z: Union[int, Fraction, mpq, QuadElement], n: int) -> SidePair:
    """Weighted reciprocal-binomial identity for any z != -1, evaluated
    exactly in the field of z.

    The right side is evaluated in the combined form

        (n+1)/(1+z) * sum_{j=0..n} (1 + z^(j+1))/(j+1) * (z/(1+z))^(n-j),

    which is literally the stated right side with the prefactor powers
    folded into the summand (identical for z != 0) and is well defined at
    z = 0, where only the j = n term survives.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not isinstance(z, QuadElement):
        z = mpq(z.numerator, z.denominator) if isinstance(z, Fraction) else mpq(z)
    if z == -1:
        raise ValueError("z = -1 is excluded")

    lhs = sum((z ** j) / binomial(n, j) for j in range(n + 1))
    one_plus = 1 + z
    w = z / one_plus
    rhs = sum((1 + z ** (j + 1)) / (j + 1) * w ** (n - j) for j in range(n + 1))
    rhs = (n + 1) * rhs / one_plus
    return SidePair(lhs, rhs)


def thm1_sides(n: int, s: int, kind: Kind) -> SidePair:
    """sum X(j+n+s)/C(n,j) vs (n+1) * sum (X(j+s-2) + X(2j+s-1))/(j+1)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x = _seq(kind)
    lhs = sum(mpq(x(j + n + s), binomial(n, j)) for j in range(n + 1))
    rhs = (n + 1) * sum(
        mpq(x(j + s - 2) + x(2 * j + s - 1), j + 1) for j in range(n + 1)
    )
    return SidePair(mpq(lhs), mpq(rhs))


def thm2_sides(n: int, s: int, kind: Kind) -> SidePair:
    """Binary-weighted identity over an even upper limit 2n.

    lhs = sum_{j=0..2n} X(j+s) / (2^(j+s) C(2n,j)).  The right side is the
    even/odd split of the two weighted-power identities; expressed against
    the 2^(j+s) weighting it carries the overall factor 2^(1-s) (the two
    coincide at s = 1).
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x = _seq(kind)
    lhs = sum(
        mpq(x(j + s), binomial(2 * n, j)) / mpq(2) ** (j + s) for j in range(2 * n + 1)
    )
    scale = mpq(2) ** (1 - s)
    f1, l1 = fibonacci(s - 1), lucas(s - 1)
    if kind == "F":
        pref = mpq(2 * n + 1, 5 ** (n + 1))
        named = f1 * sum(mpq(5**j, 2 * j) for j in range(1, n + 1)) + l1 * sum(
            mpq(5**j, 2 * j + 1) for j in range(n + 1)
        )
        seqs = sum(
            mpq(5**j * fibonacci(2 * j + s - 1), 2 ** (2 * j) * 2 * j)
            for j in range(1, n + 1)
        ) + sum(
            mpq(5**j * lucas(2 * j + s), 2 ** (2 * j + 1) * (2 * j + 1))
            for j in range(n + 1)
        )
    else:
        pref = mpq(2 * n + 1, 5**n)
        named = f1 * sum(mpq(5**j, 2 * j + 1) for j in range(n + 1)) + l1 * sum(
            mpq(5 ** (j - 1), 2 * j) for j in range(1, n + 1)
        )
        seqs = sum(
            mpq(5**j * fibonacci(2 * j + s), 2 ** (2 * j + 1) * (2 * j + 1))
            for j in range(n + 1)
        ) + sum(
            mpq(5 ** (j - 1) * lucas(2 * j + s - 1), 2 ** (2 * j) * 2 * j)
            for j in range(1, n + 1)
        )
    rhs = scale * pref * (named + seqs)
    return SidePair(mpq(lhs), mpq(rhs))


def thm3_sides(n: int, r: int, s: int, kind: Kind) -> SidePair:
    """sum (-1)^(rj) X(2rj+s)/C(n,j)
       vs (n+1) X(rn+s)/L(r)^(n+1) * sum (-1)^(rj) L(r)^j L(r(j+1))/(j+1).

    Reduces to the unweighted identity (scaled by L(s)) when r = 0 and
    kind = L.  L(r) is never zero, so the right side is always defined.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x = _seq(kind)
    lr = lucas(r)
    lhs = sum(
        (-1) ** (r * j % 2) * mpq(x(2 * r * j + s), binomial(n, j))
        for j in range(n + 1)
    )
    inner = sum(
        (-1) ** (r * j % 2) * mpq(lr, 1) ** j * lucas(r * (j + 1)) * mpq(1, j + 1)
        for j in range(n + 1)
    )
    rhs = mpq(n + 1) * x(r * n + s) / mpq(lr) ** (n + 1) * inner
    return SidePair(mpq(lhs), mpq(rhs))


def horadam_sides(n: int, r: int, s: int, params: HoradamParams) -> SidePair:
    """sum w(2rj+s)/(q^(rj) C(n,j))
       vs (n+1) w(rn+s)/v(r)^(n+1) * sum v(r)^j v(r(j+1))/(q^(rj)(j+1)).

    Requires the non-degenerate case p^2 - 4q > 0 and v(r) != 0 (automatic
    for p != 0).
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not params.is_nondegenerate():
        raise ValueError(
            f"degenerate parameters: p^2 - 4q = {params.discriminant} <= 0"
        )

    def v(j: int) -> mpq:
        return lucas_uv(j, params.p, params.q)[1]

    vr = v(r)
    if vr == 0:
        raise ValueError(f"v({r}) = 0; the identity's right side is undefined")
    q = params.q
    lhs = sum(
        horadam(2 * r * j + s, params) / (q ** (r * j) * binomial(n, j))
        for j in range(n + 1)
    )
    inner = sum(
        vr**j * v(r * (j + 1)) / (q ** (r * j) * (j + 1)) for j in range(n + 1)
    )
    rhs = (n + 1) * horadam(r * n + s, params) / vr ** (n + 1) * inner
    return SidePair(mpq(lhs), mpq(rhs))


def thm4_sides(n: int, s: int, variant: Variant, kind: Kind) -> SidePair:
    """Cubic-stride identities.

    plain: sum X(3j+s-n)/C(n,j)
           vs (n+1)/2^(n+1) * sum 2^j/(j+1) (X(s+2j+1) + X(s-j-2))
    alt:   sum (-1)^j X(3j+s-2n)/C(n,j)
           vs (n+1)/2^(n+1) * sum 2^j(-1)^j/(j+1) (X(s+j+2) + (-1)^(j-1) X(s-2j-1))
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x = _seq(kind)
    if variant == "plain":
        lhs = sum(mpq(x(3 * j + s - n), binomial(n, j)) for j in range(n + 1))
        rhs = mpq(n + 1, 2 ** (n + 1)) * sum(
            mpq(2**j, j + 1) * (x(s + 2 * j + 1) + x(s - j - 2))
            for j in range(n + 1)
        )
    elif variant == "alt":
        lhs = sum(
            (-1) ** (j % 2) * mpq(x(3 * j + s - 2 * n), binomial(n, j))
            for j in range(n + 1)
        )
        rhs = mpq(n + 1, 2 ** (n + 1)) * sum(
            mpq(2**j, j + 1)
            * (-1) ** (j % 2)
            * (x(s + j + 2) + (-1) ** ((j - 1) % 2) * x(s - 2 * j - 1))
            for j in range(n + 1)
        )
    else:
        raise ValueError(f"variant must be 'plain' or 'alt', got {variant!r}")
    return SidePair(mpq(lhs), mpq(rhs))
