"""Exact arithmetic in real quadratic extensions Q(sqrt(D)).

A :class:`QuadElement` stores a + b*sqrt(D) with exact rational a, b and
a fixed positive rational discriminant D.  sqrt(D) always denotes the
positive square root, so the numeric embedding is unambiguous.  Elements
over different D never mix: arithmetic between them raises ``ValueError``
rather than coercing.

The module also provides the characteristic roots tau, sigma of
x^2 - p*x + q (for p^2 - 4q > 0) and the golden-ratio pair ALPHA, BETA
over D = 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

RationalLike = Union[int, Fraction, mpq]
Scalar = (int, Fraction, mpq)

__all__ = [
    "QuadElement",
    "RootPair",
    "roots_of",
    "q_arith",
    "q_pow",
    "ALPHA",
    "BETA",
    "SQRT5",
]


def _as_mpq(x: RationalLike) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


@dataclass(frozen=True)
class QuadElement:
    """a + b*sqrt(d) with exact rational coefficients, d > 0 fixed."""

    a: mpq
    b: mpq
    d: mpq

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _as_mpq(self.a))
        object.__setattr__(self, "b", _as_mpq(self.b))
        object.__setattr__(self, "d", _as_mpq(self.d))
        if self.d <= 0:
            raise ValueError(f"discriminant must be positive, got {self.d}")

    # -- helpers -----------------------------------------------------------

    def _coerce(self, other) -> "QuadElement":
        if isinstance(other, QuadElement):
            if other.d != self.d:
                raise ValueError(
                    f"cannot combine elements over sqrt({self.d}) and sqrt({other.d})"
                )
            return other
        if isinstance(other, Scalar):
            return QuadElement(_as_mpq(other), mpq(0), self.d)
        return NotImplemented  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_rational(self) -> mpq:
        if self.b != 0:
            raise ValueError(f"{self} has a nonzero sqrt({self.d}) part")
        return self.a

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.d)

    def norm(self) -> mpq:
        """Field norm a^2 - b^2 * d (product with the conjugate)."""
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            # covers both the zero element and, for square d, zero divisors
            raise ZeroDivisionError(f"{self} is not invertible over sqrt({self.d})")
        return QuadElement(self.a / n, -self.b / n, self.d)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElement(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "QuadElement":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElement(mpq(1), mpq(0), self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadElement):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, Scalar):
            return self.b == 0 and self.a == _as_mpq(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self) -> str:
        return f"QuadElement({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


SQRT5 = QuadElement(mpq(0), mpq(1), mpq(5))
ALPHA = QuadElement(mpq(1, 2), mpq(1, 2), mpq(5))
BETA = QuadElement(mpq(1, 2), mpq(-1, 2), mpq(5))


@dataclass(frozen=True)
class RootPair:
    """Roots tau > sigma of x^2 - p*x + q, as elements over D = p^2 - 4q."""

    tau: QuadElement
    sigma: QuadElement
    p: mpq
    q: mpq


def roots_of(p: RationalLike, q: RationalLike) -> RootPair:
    """Characteristic roots tau = (p + sqrt(D))/2, sigma = (p - sqrt(D))/2.

    Requires the non-degenerate case D = p^2 - 4q > 0.  (1, -1) yields the
    golden ratio pair ALPHA, BETA.
    """
    p = _as_mpq(p)
    q = _as_mpq(q)
    disc = p * p - 4 * q
    if disc <= 0:
        raise ValueError(f"p^2 - 4q = {disc} must be positive")
    half = mpq(1, 2)
    tau = QuadElement(p * half, half, disc)
    sigma = QuadElement(p * half, -half, disc)
    return RootPair(tau=tau, sigma=sigma, p=p, q=q)


def q_arith(x: QuadElement, y: QuadElement, op: str) -> QuadElement:
    """Named field operations; ``op`` is one of add/sub/mul/div/conj.

    ``conj`` ignores y.  Operands must share the same discriminant.
    """
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "conj":
        return x.conjugate()
    raise ValueError(f"unknown operation {op!r}")


def q_pow(x: QuadElement, k: int) -> QuadElement:
    """x**k for any integer k; negative k inverts (x must be invertible)."""
    return x**k
