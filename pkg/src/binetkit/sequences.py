"""Exact second-order recurrence sequences.

Generators for the Fibonacci and Lucas numbers, the four-parameter
Horadam sequence w(a, b; p, q), and the Lucas sequences u, v of the
first and second kind.  Every value is exact (``int`` or ``gmpy2.mpq``);
indices may be arbitrarily negative.  Negative indices follow the sign
rules F(-j) = (-1)^(j-1) F(j), L(-j) = (-1)^j L(j) for the integer
sequences, and the backward recurrence w(j-2) = (p*w(j-1) - w(j)) / q
for Horadam sequences (q must be nonzero).

All functions are pure; the internal memo tables are append-only and
never change observable results, so concurrent use is safe.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

RationalLike = Union[int, Fraction, mpq]

__all__ = [
    "HoradamParams",
    "fibonacci",
    "lucas",
    "horadam",
    "lucas_uv",
]

_LOCK = threading.Lock()
_FIB: list[int] = [0, 1]
_LUC: list[int] = [2, 1]


def _forward(cache: list[int], j: int) -> int:
    if j >= len(cache):
        with _LOCK:
            while len(cache) <= j:
                cache.append(cache[-1] + cache[-2])
    return cache[j]


def fibonacci(j: int) -> int:
    """F(j) for any integer j, with F(0) = 0, F(1) = 1."""
    if j >= 0:
        return _forward(_FIB, j)
    k = -j
    sign = 1 if k % 2 == 1 else -1
    return sign * _forward(_FIB, k)


def lucas(j: int) -> int:
    """L(j) for any integer j, with L(0) = 2, L(1) = 1."""
    if j >= 0:
        return _forward(_LUC, j)
    k = -j
    sign = -1 if k % 2 == 1 else 1
    return sign * _forward(_LUC, k)


def _as_mpq(x: RationalLike) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


@dataclass(frozen=True)
class HoradamParams:
    """Parameters (a, b; p, q) of the recurrence w(j) = p*w(j-1) - q*w(j-2).

    a = w(0) and b = w(1) are the seeds.  p and q must be nonzero; q != 0
    is what makes the backward extension to negative indices well defined.
    """

    a: mpq
    b: mpq
    p: mpq
    q: mpq

    def __post_init__(self) -> None:
        for name in ("a", "b", "p", "q"):
            object.__setattr__(self, name, _as_mpq(getattr(self, name)))
        if self.p == 0:
            raise ValueError("Horadam parameter p must be nonzero")
        if self.q == 0:
            raise ValueError("Horadam parameter q must be nonzero")

    @property
    def discriminant(self) -> mpq:
        return self.p * self.p - 4 * self.q

    def is_nondegenerate(self) -> bool:
        """True when p^2 - 4q > 0, i.e. the characteristic roots are real
        and distinct and the closed (Binet) form applies."""
        return self.discriminant > 0

    def binet_coefficients(self):
        """Coefficients (A, B) with w(n) = A*tau^n + B*sigma^n.

        A = (b - a*sigma)/(tau - sigma), B = (a*tau - b)/(tau - sigma);
        requires the non-degenerate case p^2 - 4q > 0.
        """
        from .quadratic import roots_of

        pair = roots_of(self.p, self.q)
        delta = pair.tau - pair.sigma
        a_coef = (self.b - self.a * pair.sigma) / delta
        b_coef = (self.a * pair.tau - self.b) / delta
        return a_coef, b_coef


_HORADAM_FWD: dict[tuple, list[mpq]] = {}
_HORADAM_BWD: dict[tuple, list[mpq]] = {}


def horadam(j: int, params: HoradamParams) -> mpq:
    """w(j) for the Horadam sequence given by ``params``, any integer j."""
    key = (params.a, params.b, params.p, params.q)
    if j >= 0:
        with _LOCK:
            fwd = _HORADAM_FWD.setdefault(key, [params.a, params.b])
            while len(fwd) <= j:
                fwd.append(params.p * fwd[-1] - params.q * fwd[-2])
            return fwd[j]
    with _LOCK:
        # bwd[k] holds w(-1-k); w(j-2) = (p*w(j-1) - w(j)) / q
        bwd = _HORADAM_BWD.setdefault(key, [])
        if not bwd:
            bwd.append((params.p * params.a - params.b) / params.q)
        while len(bwd) < -j:
            w_next = bwd[-2] if len(bwd) >= 2 else params.a
            bwd.append((params.p * bwd[-1] - w_next) / params.q)
        return bwd[-j - 1]


def lucas_uv(j: int, p: RationalLike, q: RationalLike) -> tuple[mpq, mpq]:
    """(u(j), v(j)) for the Lucas sequences of the first and second kind.

    u has seeds (0, 1) and v has seeds (2, p), both under the recurrence
    x(j) = p*x(j-1) - q*x(j-2).
    """
    p = _as_mpq(p)
    q = _as_mpq(q)
    u = horadam(j, HoradamParams(mpq(0), mpq(1), p, q))
    v = horadam(j, HoradamParams(mpq(2), p, p, q))
    return u, v
