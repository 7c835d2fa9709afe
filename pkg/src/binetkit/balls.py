"""Arbitrary-precision ball arithmetic with certified error radii.

A :class:`Ball` is a midpoint/radius pair (mid, rad) at a stated working
precision: the represented real number is guaranteed to lie inside
[mid - rad, mid + rad].  Every operation preserves that containment.

Certification strategy
----------------------
* Midpoints are MPFR floats (via gmpy2) computed with round-to-nearest.
  MPFR results are correctly rounded, so a nonzero round-to-nearest
  result y at precision p satisfies |y - exact| <= 2^(exp(y) - p); a
  zero result is exact at our exponent ranges (the MPFR exponent range
  is +-2^30, far wider than anything produced here, so no underflow).
* Radii live in a dedicated 32-bit round-up context: every radius
  computation can only overestimate.
* The elementary functions sqrt, log, arctan, arcsin are all monotone
  increasing on their domains, so they are evaluated on the enclosure
  endpoints with directed rounding (down at the low end, up at the high
  end), which yields a certified enclosure of the image.
* Comparisons and domain checks convert the dyadic mpfr values to exact
  rationals first, so no rounding can corrupt a verdict.

Derived helpers: arccos(x) = pi/2 - arcsin(x), and the cotangent of an
angle given through its cosine, cot(arccos c) = c / sqrt(1 - c^2).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .quadratic import QuadElement

RationalLike = Union[int, Fraction, mpq]

__all__ = [
    "Ball",
    "BallDomainError",
    "ComparisonOutcome",
    "ball_from_rational",
    "ball_from_int_ratio",
    "ball_from_quad",
    "const_pi",
    "elem_fn",
    "ball_sqrt",
    "ball_log",
    "ball_arctan",
    "ball_arcsin",
    "ball_arccos",
    "cot_of_arccos",
    "ball_compare",
    "MIN_PRECISION",
]

MIN_PRECISION = 16
_RADIUS_PREC = 32

# Radius arithmetic: low precision, always rounded up.
_RCTX = gmpy2.context(precision=_RADIUS_PREC, round=gmpy2.RoundUp)
_RZERO = mpfr(0, precision=_RADIUS_PREC)


class BallDomainError(ValueError):
    """The input enclosure violates a function's domain.

    ``definite`` is True when the violation cannot be cured by higher
    precision (the whole enclosure, midpoint included, is out of domain)
    and False when only the radius overlaps the boundary.
    """

    def __init__(self, message: str, definite: bool) -> None:
        super().__init__(message)
        self.definite = definite


class ComparisonOutcome(enum.Enum):
    OVERLAP_WITHIN_TOL = "overlap_within_tol"
    DISJOINT_BEYOND_TOL = "disjoint_beyond_tol"
    INCONCLUSIVE = "inconclusive"


@lru_cache(maxsize=None)
def _ctxs(prec: int):
    if prec < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {prec}")
    return (
        gmpy2.context(precision=prec, round=gmpy2.RoundToNearest),
        gmpy2.context(precision=prec, round=gmpy2.RoundDown),
        gmpy2.context(precision=prec, round=gmpy2.RoundUp),
    )


def _round_err(mid: mpfr, prec: int) -> mpfr:
    """Upper bound on |mid - exact| for a correctly rounded nonzero mid."""
    if mid == 0:
        return _RZERO
    return _RCTX.pow(mpfr(2, precision=_RADIUS_PREC), gmpy2.get_exp(mid) - prec)


def _neg_exact(x: mpfr) -> mpfr:
    """Sign flip that never consults the (53-bit) global context.

    Negation at the operand's own precision is exact; plain ``-x`` would
    round through whatever context is currently installed.
    """
    ctx, _, _ = _ctxs(max(x.precision, MIN_PRECISION))
    return ctx.minus(x)


def _abs_exact(x: mpfr) -> mpfr:
    return x if x >= 0 else _neg_exact(x)


def _as_mpq(x: RationalLike) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


@dataclass(frozen=True)
class Ball:
    """Certified enclosure [mid - rad, mid + rad] at ``prec`` bits."""

    mid: mpfr
    rad: mpfr
    prec: int

    def __post_init__(self) -> None:
        if not (gmpy2.is_finite(self.mid) and gmpy2.is_finite(self.rad)):
            raise ValueError("ball midpoint and radius must be finite")
        if self.rad < 0:
            raise ValueError("ball radius must be non-negative")

    # -- exact views ---------------------------------------------------------

    def lo(self) -> mpq:
        """Exact rational lower endpoint."""
        return mpq(self.mid) - mpq(self.rad)

    def hi(self) -> mpq:
        """Exact rational upper endpoint."""
        return mpq(self.mid) + mpq(self.rad)

    def contains(self, x: RationalLike) -> bool:
        x = _as_mpq(x)
        return self.lo() <= x <= self.hi()

    def overlaps(self, other: "Ball") -> bool:
        return self.lo() <= other.hi() and other.lo() <= self.hi()

    def is_exact(self) -> bool:
        return self.rad == 0

    # -- arithmetic ----------------------------------------------------------

    def _binary_prec(self, other: "Ball") -> int:
        return max(self.prec, other.prec)

    def __add__(self, other):
        if isinstance(other, Ball):
            prec = self._binary_prec(other)
            cn, _, _ = _ctxs(prec)
            mid = cn.add(self.mid, other.mid)
            rad = _RCTX.add(_RCTX.add(self.rad, other.rad), _round_err(mid, prec))
            return Ball(mid, rad, prec)
        if isinstance(other, (int, Fraction, mpq)):
            return self._shift(_as_mpq(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Ball):
            return self + (-other)
        if isinstance(other, (int, Fraction, mpq)):
            return self._shift(-_as_mpq(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Ball(_neg_exact(self.mid), self.rad, self.prec)

    def __abs__(self):
        return Ball(_abs_exact(self.mid), self.rad, self.prec)

    def __mul__(self, other):
        if isinstance(other, Ball):
            prec = self._binary_prec(other)
            cn, _, _ = _ctxs(prec)
            mid = cn.mul(self.mid, other.mid)
            cross = _RCTX.add(
                _RCTX.add(
                    _RCTX.mul(_abs_exact(self.mid), other.rad),
                    _RCTX.mul(_abs_exact(other.mid), self.rad),
                ),
                _RCTX.mul(self.rad, other.rad),
            )
            rad = _RCTX.add(cross, _round_err(mid, prec))
            return Ball(mid, rad, prec)
        if isinstance(other, (int, Fraction, mpq)):
            return self._scale(_as_mpq(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Ball):
            return self * other._reciprocal()
        if isinstance(other, (int, Fraction, mpq)):
            q = _as_mpq(other)
            if q == 0:
                raise ZeroDivisionError("division of a ball by zero")
            return self._scale(1 / q)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, mpq)):
            return self._reciprocal()._scale(_as_mpq(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (self._reciprocal()) ** (-k)
        result = ball_from_rational(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _shift(self, q: mpq) -> "Ball":
        cn, _, _ = _ctxs(self.prec)
        mid = cn.add(self.mid, q)
        rad = _RCTX.add(self.rad, _round_err(mid, self.prec))
        return Ball(mid, rad, self.prec)

    def inflate(self, extra: RationalLike) -> "Ball":
        """Widen the radius by the exact non-negative amount ``extra``."""
        e = _as_mpq(extra)
        if e < 0:
            raise ValueError(f"inflation must be non-negative, got {e}")
        rad = _RCTX.add(self.rad, _RCTX.add(_RZERO, e))
        return Ball(self.mid, rad, self.prec)

    def _scale(self, q: mpq) -> "Ball":
        cn, _, _ = _ctxs(self.prec)
        mid = cn.mul(self.mid, q)
        rad = _RCTX.add(
            _RCTX.mul(self.rad, _RCTX.add(_RZERO, abs(q))),
            _round_err(mid, self.prec),
        )
        return Ball(mid, rad, self.prec)

    def _reciprocal(self) -> "Ball":
        # requires an enclosure strictly excluding zero
        lo, hi = self.lo(), self.hi()
        if lo <= 0 <= hi:
            raise ZeroDivisionError(
                f"cannot take the reciprocal of a ball containing zero ({self})"
            )
        _, cd, cu = _ctxs(self.prec)
        # 1/x is monotone decreasing on intervals of constant sign
        new_lo = cd.div(mpz(1), cu.add(_RZERO, hi))
        new_hi = cu.div(mpz(1), cd.add(_RZERO, lo))
        return _from_endpoints(new_lo, new_hi, self.prec)

    def __str__(self) -> str:
        return f"{self.mid} +/- {self.rad}"

    def __repr__(self) -> str:
        return f"Ball(mid={self.mid!r}, rad={self.rad!r}, prec={self.prec})"


def _from_endpoints(lo: mpfr, hi: mpfr, prec: int) -> Ball:
    """Ball guaranteed to contain the interval [lo, hi]."""
    cn, _, _ = _ctxs(prec)
    mid = cn.div(cn.add(lo, hi), 2)
    rad = max(_RCTX.sub(hi, mid), _RCTX.sub(mid, lo), _RZERO)
    return Ball(mid, rad, prec)


def ball_from_rational(x: RationalLike, prec: int = 256) -> Ball:
    """Ball containing the exact rational x; exact whenever representable."""
    cn, _, _ = _ctxs(prec)
    q = _as_mpq(x)
    mid = cn.add(mpfr(0, precision=prec), q)
    rad = _RZERO if mpq(mid) == q else _round_err(mid, prec)
    return Ball(mid, rad, prec)


def ball_from_int_ratio(num: int, den: int, prec: int = 256) -> Ball:
    """Ball containing num/den without normalizing the fraction.

    Avoids the gcd cost of exact-rational construction for huge terms:
    num/den is floor-divided against 2^(prec+16), the quotient converted
    with one correct rounding, and both error sources folded into the
    radius.
    """
    if den <= 0:
        raise ValueError(f"denominator must be positive, got {den}")
    if num == 0:
        return ball_from_rational(0, prec)
    shift = prec + 16
    q = (num << shift) // den  # |num/den - q 2^-shift| < 2^-shift
    cn, _, _ = _ctxs(prec)
    two_pow = _RCTX.pow(mpfr(2, precision=_RADIUS_PREC), -shift)  # exact
    mid = cn.mul(cn.add(mpfr(0, precision=prec), mpz(q)), two_pow)
    rad = _RCTX.add(two_pow, _round_err(mid, prec))
    return Ball(mid, rad, prec)


def ball_from_quad(x: QuadElement, prec: int = 256) -> Ball:
    """Ball containing a + b*sqrt(d), using the positive root of d."""
    if x.d <= 0:
        raise ValueError(f"discriminant must be positive, got {x.d}")
    if x.b == 0:
        return ball_from_rational(x.a, prec)
    root = ball_sqrt(ball_from_rational(x.d, prec))
    return ball_from_rational(x.b, prec) * root + ball_from_rational(x.a, prec)


def const_pi(prec: int = 256) -> Ball:
    """Certified enclosure of pi (radius <= 2^(4 - prec))."""
    _, cd, cu = _ctxs(prec)
    return _from_endpoints(cd.const_pi(), cu.const_pi(), prec)


def _monotone(name: str, x: Ball) -> Ball:
    _, cd, cu = _ctxs(x.prec)
    lo_in = cd.sub(x.mid, x.rad)
    hi_in = cu.add(x.mid, x.rad)
    lo_q, hi_q = x.lo(), x.hi()

    if name in ("sqrt", "log"):
        if hi_q <= 0:
            raise BallDomainError(f"{name} requires a positive enclosure, got {x}", True)
        if lo_q <= 0:
            raise BallDomainError(
                f"{name} enclosure reaches into the non-positive axis ({x}); "
                "increase precision",
                False,
            )
    elif name == "asin":
        if lo_q > 1 or hi_q < -1:
            raise BallDomainError(f"arcsin enclosure outside [-1, 1]: {x}", True)
        if lo_q < -1 or hi_q > 1:
            raise BallDomainError(
                f"arcsin enclosure overlaps the boundary of [-1, 1] ({x}); "
                "increase precision",
                False,
            )

    fd = getattr(cd, name)
    fu = getattr(cu, name)
    return _from_endpoints(fd(lo_in), fu(hi_in), x.prec)


def ball_sqrt(x: Ball) -> Ball:
    return _monotone("sqrt", x)


def ball_log(x: Ball) -> Ball:
    return _monotone("log", x)


def ball_arctan(x: Ball) -> Ball:
    return _monotone("atan", x)


def ball_arcsin(x: Ball) -> Ball:
    return _monotone("asin", x)


_ELEM = {
    "sqrt": ball_sqrt,
    "log": ball_log,
    "arctan": ball_arctan,
    "arcsin": ball_arcsin,
}


def elem_fn(name: str, x: Ball) -> Ball:
    """Dispatch to one of the certified elementary functions."""
    try:
        fn = _ELEM[name]
    except KeyError:
        raise ValueError(f"unknown elementary function {name!r}") from None
    return fn(x)


def ball_arccos(x: Ball) -> Ball:
    """arccos(x) = pi/2 - arcsin(x)."""
    return const_pi(x.prec) / 2 - ball_arcsin(x)


def cot_of_arccos(c: Ball) -> Ball:
    """Cotangent of the angle whose cosine is c: c / sqrt(1 - c^2)."""
    one_minus = 1 - c * c
    return c / ball_sqrt(one_minus)


def ball_compare(a: Ball, b: Ball, tol: RationalLike) -> ComparisonOutcome:
    """Certified three-way comparison of two enclosures.

    * OVERLAP_WITHIN_TOL:   |true_a - true_b| <= tol is certain.
    * DISJOINT_BEYOND_TOL:  |true_a - true_b| >  tol is certain.
    * INCONCLUSIVE:         the radii are too large to decide.

    The decision is made in exact rational arithmetic.
    """
    tol = _as_mpq(tol)
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    dist = abs(mpq(a.mid) - mpq(b.mid))
    rads = mpq(a.rad) + mpq(b.rad)
    if dist + rads <= tol:
        return ComparisonOutcome.OVERLAP_WITHIN_TOL
    if dist > rads + tol:
        return ComparisonOutcome.DISJOINT_BEYOND_TOL
    return ComparisonOutcome.INCONCLUSIVE
