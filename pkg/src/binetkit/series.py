"""Certified evaluation of the infinite series families.

Every family provides three things: an exact-rational term generator, a
proven geometric ratio bound, and a closed form evaluated in certified
ball arithmetic.  ``verify_series`` sums terms exactly, converts each to
a ball at the working precision, bounds the dropped tail by a geometric
series, and compares the resulting enclosure against the closed form.
A REFUTED verdict therefore certifies a genuine discrepancy, never a
rounding artifact.

Tail certification
------------------
For each family we prove |term(j+1)| <= rho * |term(j)| for all j >= j0
with an explicit rational rho < 1, which gives

    sum_{j > N} |term(j)| <= |term(N)| * rho / (1 - rho)      (N >= j0).

The families fall into three patterns (phi denotes the golden ratio,
psi its conjugate; X stands for either the Fibonacci or Lucas value):

* pure powers of a rational z: the ratio of consecutive terms is a
  rational function of j times z^2 (or |z|), bounded directly;
* central-binomial families X(2j+s)/(j^e C(2j,j)): the binomial part
  contracts by C(2j,j)/C(2j+2,j+1) = (j+1)/(2(2j+1)), and for |k| >= 1
  the sequence part obeys |X(k+R)| <= phi^R (1+w)/(1-w) |X(k)| with
  w = phi^(-2|k|) <= (2/5)^|k|, because |X(k)| lies between
  phi^|k| (1-w) and phi^|k| (1+w) (up to the common sqrt(5) for F).
  With phi^2 < 169/64 the product stays below 1 once |2j+s| is modest;
* families with an L(r)^j denominator: there the needed power bound is
  phi^R / L(R) < L(2R)/(L(2R)+1) for even R (valid because
  L(2R) - phi^(2R) = phi^(-2R) > 0), an exact rational strictly below 1.

``j0`` for each family also clears index sign changes and zero terms,
so the ratio argument applies verbatim from j0 on.
"""

from __future__ import annotations

import math
import threading
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Optional, Union

from gmpy2 import mpq

from .balls import (
    Ball,
    ball_arcsin,
    ball_arctan,
    ball_compare,
    ball_from_int_ratio,
    ball_from_quad,
    ball_from_rational,
    ball_log,
    ball_sqrt,
    const_pi,
    ComparisonOutcome,
)
from .binomials import binomial, central_binomial
from .quadratic import ALPHA, SQRT5, QuadElement, q_pow
from .records import Status, VerificationRecord
from .sequences import fibonacci, lucas

RationalLike = Union[int, Fraction, mpq]

__all__ = [
    "SeriesFamily",
    "FAMILIES",
    "hm_weight",
    "partial_sum",
    "tail_bound",
    "closed_form",
    "verify_series",
    "DEFAULT_MAX_TERMS",
]

DEFAULT_MAX_TERMS = 10**6

_J0_SEARCH_CAP = 100_000


# ---------------------------------------------------------------------------
# nested harmonic-square weights
# ---------------------------------------------------------------------------

_HM_LOCK = threading.Lock()
_HM_ROWS: dict[int, list[mpq]] = {}  # m -> [H_m(1), H_m(2), ...]


def hm_weight(m: int, j: int) -> mpq:
    """Nested weight H_m(j): H_1(j) = 1/4 and
    H_(m+1)(j) = sum_{k=1}^{j-1} H_m(k)/(2k)^2 (exact rational).

    H_m(j) = 0 for j < m; the first nonzero value sits at j = m.
    """
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    if j < 1:
        raise ValueError(f"j must be a positive integer, got {j}")
    if m == 1:
        return mpq(1, 4)
    with _HM_LOCK:
        for level in range(2, m + 1):
            # the previous level's row has already been extended to >= j
            row = _HM_ROWS.setdefault(level, [mpq(0)])
            while len(row) < j:
                k = len(row)  # extending to H_level(k + 1)
                prev = mpq(1, 4) if level == 2 else _HM_ROWS[level - 1][k - 1]
                row.append(row[-1] + prev / (2 * k) ** 2)
        return _HM_ROWS[m][j - 1]


def _hm_sup(m: int) -> mpq:
    """Rational upper bound for sup_j H_m(j).

    The nested sum over decreasing indices is at most S^(m-1)/(m-1)! times
    the innermost 1/4, with S = sum 1/(2k)^2 = pi^2/24 < 5/12.
    """
    return mpq(1, 4) * mpq(5, 12) ** (m - 1) / math.factorial(m - 1)


def _harmonic(k: int) -> mpq:
    return sum((mpq(1, i) for i in range(1, k + 1)), mpq(0))


# ---------------------------------------------------------------------------
# shared ratio-bound helpers
# ---------------------------------------------------------------------------

_ALPHA_SQ_UB = mpq(169, 64)  # phi^2 < (13/8)^2
_W_BASE = mpq(2, 5)  # phi^(-2) = (3 - sqrt(5))/2 < 2/5


def _env_ratio(min_abs: int) -> mpq:
    """(1+w)/(1-w) with w = (2/5)^min_abs >= phi^(-2 min_abs), min_abs >= 1.

    The exponent is capped at 64: (2/5)^64 already bounds every larger
    power of 2/5 from above, and the cap keeps the rationals small."""
    if min_abs < 1:
        raise ValueError("sequence envelope needs |index| >= 1")
    w = _W_BASE ** min(min_abs, 64)
    return (1 + w) / (1 - w)


def _lucas_power_ratio(step: int) -> mpq:
    """Rational bound for phi^step / L(step), step even and positive:
    phi^step / L(step) < L(2 step) / (L(2 step) + 1)."""
    if step <= 0 or step % 2:
        raise ValueError("step must be a positive even integer")
    l2 = lucas(2 * step)
    return mpq(l2, l2 + 1)


def _seq(kind: str):
    if kind == "F":
        return fibonacci
    if kind == "L":
        return lucas
    raise ValueError(f"kind must be 'F' or 'L', got {kind!r}")


def _sqrt_cot_ball(prec: int) -> Ball:
    # sqrt(phi^3 / sqrt(5)) = sqrt(1 + (2/5) sqrt(5)), the cot(pi/5) value
    return ball_sqrt(ball_from_quad(QuadElement(mpq(1), mpq(2, 5), mpq(5)), prec))


def _as_mpq(x: RationalLike) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


# ---------------------------------------------------------------------------
# family definition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesFamily:
    """One parametrized series with certified tail decay and closed form.

    ``term_stream``, when present, yields (j, numerator, denominator)
    triples equal to term(j) but built by integer recurrences without
    fraction normalization; the engine prefers it for speed.  Both paths
    must agree exactly.
    """

    id: str
    statement: str
    param_names: tuple
    validate: Callable[[Mapping], dict]
    start: Callable[[Mapping], int]
    term: Callable[[int, Mapping], mpq]
    j0: Callable[[Mapping], int]
    ratio_bound: Callable[[Mapping, int], mpq]
    closed_form: Callable[[Mapping, int], Ball]
    term_stream: Optional[Callable[[Mapping], "Iterator[tuple[int, int, int]]"]] = None


def _int_param(params: Mapping, name: str, default=None, minimum=None) -> int:
    if name not in params or params[name] is None:
        if default is None:
            raise ValueError(f"missing parameter {name!r}")
        return default
    v = params[name]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"parameter {name!r} must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ValueError(f"parameter {name!r} must be >= {minimum}, got {v}")
    return v


def _rat_param(params: Mapping, name: str) -> mpq:
    if name not in params or params[name] is None:
        raise ValueError(f"missing parameter {name!r}")
    v = params[name]
    if isinstance(v, (int, Fraction, mpq)) and not isinstance(v, bool):
        return _as_mpq(v)
    raise ValueError(f"parameter {name!r} must be rational, got {v!r}")


def _search_j0(base: int, rho_at: Callable[[int], Optional[mpq]]) -> int:
    """Smallest j >= base where the certified ratio drops below 1."""
    j = base
    while j < _J0_SEARCH_CAP:
        rho = rho_at(j)
        if rho is not None and rho < 1:
            return j
        j += 1
    raise ValueError("could not certify a geometric ratio below 1")


# -- central-binomial families: X(2j+s) / (j^e C(2j,j)) ---------------------


def _central_family(fam_id: str, kind: str, j_exp: int, statement: str) -> SeriesFamily:
    x = _seq(kind)

    def validate(params: Mapping) -> dict:
        return {"s": _int_param(params, "s")}

    def start(params: Mapping) -> int:
        return 1

    def term(j: int, params: Mapping) -> mpq:
        s = params["s"]
        return mpq(x(2 * j + s), j**j_exp * central_binomial(j))

    def _binom_part_sup(j: int) -> mpq:
        # sup over i >= j of (i/(i+1))^j_exp * (i+1)/(2(2i+1))
        if j_exp == 0:
            return mpq(j + 1, 2 * (2 * j + 1))  # decreasing in j
        return mpq(1, 4)  # increasing toward 1/4

    def _rho(j: int, s: int) -> Optional[mpq]:
        k = 2 * j + s
        if k < 2:
            return None
        rho = _ALPHA_SQ_UB * _env_ratio(k) * _binom_part_sup(j)
        return rho

    def j0(params: Mapping) -> int:
        s = params["s"]
        base = max(1, (3 - s) // 2)  # first j >= 1 with 2j + s >= 2
        if j_exp == 0:
            base = max(base, 2)
        return _search_j0(base, lambda j: _rho(j, s))

    def ratio_bound(params: Mapping, j_start: int) -> mpq:
        s = params["s"]
        rho = _rho(j_start, s)
        if rho is None or rho >= 1:
            raise ValueError(f"no certified ratio at j0={j_start} for {fam_id}")
        return rho

    def closed(params: Mapping, prec: int) -> Ball:
        s = params["s"]
        pi = const_pi(prec)
        if j_exp == 1:
            coef = QuadElement(mpq(-x(s - 1)), mpq(x(s + 1)), mpq(5))
            return ball_from_quad(coef, prec) * pi * _sqrt_cot_ball(prec) / 5
        if j_exp == 2:
            if kind == "F":
                quad = (q_pow(ALPHA, s) - mpq(lucas(s), 10)) / (5 * SQRT5)
            else:
                quad = (2 * q_pow(ALPHA, s) + mpq(lucas(s), 4)) * mpq(2, 25)
            return pi * pi * ball_from_quad(quad, prec)
        # j_exp == 0
        sqrt_cot = _sqrt_cot_ball(prec)
        if kind == "F":
            coef = QuadElement(mpq(-lucas(s)), mpq(lucas(s + 2)), mpq(5))
            return (
                ball_from_rational(mpq(lucas(s + 3), 5), prec)
                + ball_from_quad(coef, prec) * pi * sqrt_cot * mpq(2, 25)
            )
        coef = QuadElement(mpq(-fibonacci(s)), mpq(fibonacci(s + 2)), mpq(5))
        return (
            ball_from_rational(mpq(fibonacci(s + 3)), prec)
            + ball_from_quad(coef, prec) * pi * sqrt_cot * mpq(2, 5)
        )

    return SeriesFamily(
        id=fam_id,
        statement=statement,
        param_names=("s",),
        validate=validate,
        start=start,
        term=term,
        j0=j0,
        ratio_bound=ratio_bound,
        closed_form=closed,
    )


# -- H_m weighted central-binomial families ----------------------------------


def _hm_family(fam_id: str, kind: str) -> SeriesFamily:
    x = _seq(kind)
    statement = (
        f"sum_[j>=1] H_m(j) {kind}(2j+s) / (j^2 C(2j,j)) = "
        f"(pi/10)^(2m)/(2m)! * "
        + (
            "((3^(2m)+1) phi^s - L(s)) / sqrt(5)"
            if kind == "F"
            else "((3^(2m)-1) phi^s + L(s))"
        )
    )

    def validate(params: Mapping) -> dict:
        out = {
            "m": _int_param(params, "m", minimum=1),
            "s": _int_param(params, "s"),
            "variant": params.get("variant", "theorem") or "theorem",
        }
        if out["variant"] not in ("theorem", "paper-printed"):
            raise ValueError(f"unknown variant {out['variant']!r}")
        if out["variant"] == "paper-printed" and (out["m"] != 2 or out["s"] != 0):
            raise ValueError("the printed example constants exist only at m=2, s=0")
        return out

    def start(params: Mapping) -> int:
        return 1

    def term(j: int, params: Mapping) -> mpq:
        m, s = params["m"], params["s"]
        return hm_weight(m, j) * x(2 * j + s) / (j * j * central_binomial(j))

    def _weight_ratio(m: int, j: int) -> mpq:
        # H_m(j+1)/H_m(j) = 1 + H_(m-1)(j) / ((2j)^2 H_m(j)) for m >= 2
        if m == 1:
            return mpq(1)
        hmj = hm_weight(m, j)
        if hmj == 0:
            raise ValueError("weight ratio needs j >= m")
        return 1 + _hm_sup(m - 1) / ((2 * j) ** 2 * hmj)

    def _rho(j: int, m: int, s: int) -> Optional[mpq]:
        k = 2 * j + s
        if k < 2 or j < m:
            return None
        return _weight_ratio(m, j) * _ALPHA_SQ_UB * _env_ratio(k) * mpq(1, 4)

    def j0(params: Mapping) -> int:
        m, s = params["m"], params["s"]
        base = max(1, m, (2 - s + 1) // 2)
        return _search_j0(base, lambda j: _rho(j, m, s))

    def ratio_bound(params: Mapping, j_start: int) -> mpq:
        rho = _rho(j_start, params["m"], params["s"])
        if rho is None or rho >= 1:
            raise ValueError(f"no certified ratio at j0={j_start} for {fam_id}")
        return rho

    def closed(params: Mapping, prec: int) -> Ball:
        m, s = params["m"], params["s"]
        pi = const_pi(prec)
        if params["variant"] == "paper-printed":
            # printed example constants, rescaled by 1/16 because the
            # example weight sum_{k<j} 1/k^2 equals 16 H_2(j)
            if kind == "F":
                return (pi**4) * ball_from_quad(
                    QuadElement(mpq(0), mpq(27, 25000 * 16), mpq(5)), prec
                )
            return (pi**4) * mpq(41, 4100 * 16)
        factor = (pi / 10) ** (2 * m) * mpq(1, math.factorial(2 * m))
        three = 3 ** (2 * m)
        if kind == "F":
            quad = ((three + 1) * q_pow(ALPHA, s) - lucas(s)) / SQRT5
        else:
            quad = (three - 1) * q_pow(ALPHA, s) + lucas(s)
        return factor * ball_from_quad(quad, prec)

    return SeriesFamily(
        id=fam_id,
        statement=statement,
        param_names=("m", "s", "variant"),
        validate=validate,
        start=start,
        term=term,
        j0=j0,
        ratio_bound=ratio_bound,
        closed_form=closed,
    )


# -- arctan-flavoured families ------------------------------------------------


def _thm8_family(fam_id: str, kind: str) -> SeriesFamily:
    x = _seq(kind)
    statement = (
        f"sum_[j>=0] 2^(2j+1) {kind}(2rj+s) / ((2j+1) C(2j,j) L(2r)^(j+1)) = "
        + (
            "(pi/2) F(s) + L(s)/sqrt(5) * arctan(F(2r) sqrt(5)/2)"
            if kind == "F"
            else "(pi/2) L(s) + F(s) sqrt(5) * arctan(F(2r) sqrt(5)/2)"
        )
    )

    def validate(params: Mapping) -> dict:
        return {"r": _int_param(params, "r"), "s": _int_param(params, "s")}

    def start(params: Mapping) -> int:
        return 0

    def term(j: int, params: Mapping) -> mpq:
        r, s = params["r"], params["s"]
        l2r = lucas(2 * r)
        return mpq(
            2 ** (2 * j + 1) * x(2 * r * j + s),
            (2 * j + 1) * central_binomial(j) * l2r ** (j + 1),
        )

    def _rho(j: int, r: int, s: int) -> Optional[mpq]:
        if r == 0:
            # term ratio = (j+1)/(2j+3) <= 1/2
            return mpq(1, 2)
        k = 2 * r * j + s
        k_next = 2 * r * (j + 1) + s
        if abs(k) < 2 or abs(k_next) != abs(k) + 2 * abs(r):
            return None
        return _lucas_power_ratio(2 * abs(r)) * _env_ratio(abs(k))

    def j0(params: Mapping) -> int:
        r, s = params["r"], params["s"]
        return _search_j0(0, lambda j: _rho(j, r, s))

    def ratio_bound(params: Mapping, j_start: int) -> mpq:
        rho = _rho(j_start, params["r"], params["s"])
        if rho is None or rho >= 1:
            raise ValueError(f"no certified ratio at j0={j_start} for {fam_id}")
        return rho

    def closed(params: Mapping, prec: int) -> Ball:
        r, s = params["r"], params["s"]
        pi = const_pi(prec)
        atan_arg = ball_from_quad(
            QuadElement(mpq(0), mpq(fibonacci(2 * r), 2), mpq(5)), prec
        )
        at = ball_arctan(atan_arg)
        if kind == "F":
            coef = ball_from_quad(QuadElement(mpq(0), mpq(lucas(s), 5), mpq(5)), prec)
            return pi * mpq(fibonacci(s), 2) + coef * at
        coef = ball_from_quad(QuadElement(mpq(0), mpq(fibonacci(s)), mpq(5)), prec)
        return pi * mpq(lucas(s), 2) + coef * at

    def stream(params: Mapping) -> Iterator[tuple[int, int, int]]:
        # X(k+R) = L(R) X(k) - X(k-R) for even R.  The power of 4 is
        # folded into the recurrence (y = 4^j X) and the denominator is
        # kept as one integer with a small-multiplier update, so every
        # step is a big-by-small multiply.
        r, s = params["r"], params["s"]
        step = 2 * r
        l2r = lucas(2 * r)
        lstep = lucas(step)
        y_prev = x(s - step)  # 4^(j-1) X(...) at j = 0, scaled by 4^-1
        y_cur = x(s)
        den = l2r  # (2j+1) C(2j,j) L(2r)^(j+1) at j = 0
        j = 0
        while True:
            yield j, 2 * y_cur, den
            j += 1
            # den ratio: (2j+1)/(2j-1) * C ratio 2(2j-1)/j * L(2r)
            den = den * (2 * j + 1) * 2 * l2r // j
            y_prev, y_cur = 4 * y_cur, 4 * (lstep * y_cur - y_prev)

    return SeriesFamily(
        id=fam_id,
        statement=statement,
        param_names=("r", "s"),
        validate=validate,
        start=start,
        term=term,
        j0=j0,
        ratio_bound=ratio_bound,
        closed_form=closed,
        term_stream=stream,
    )


# -- non-central binomials (master log identity and its F/L specialization) --


def _sury_closed_parts(z: mpq, n: int, m: int) -> mpq:
    """Exact part of the master identity's right side (everything but the
    log term), already multiplied by n."""
    s1 = sum(
        binomial(n - 1, j) * (z - 1) ** (n - j - 1) / (j * binomial(m + j, j))
        for j in range(1, n)
    )
    s2 = sum(
        binomial(m, j) * (z - 1) ** (n + j - 1) / (j * binomial(n - 1 + j, j))
        for j in range(1, m + 1)
    )
    harm = (z - 1) ** (n - 1) * (_harmonic(n - 1) - _harmonic(m))
    return n * (mpq(s1) - mpq(s2) + harm)


def _sury_family() -> SeriesFamily:
    statement = (
        "sum_[j>=m] z^(n+j)/C(n+j,j) = n sum_[j=1..n-1] C(n-1,j)(z-1)^(n-j-1)/(j C(m+j,j))"
        " - n sum_[j=1..m] C(m,j)(z-1)^(n+j-1)/(j C(n-1+j,j))"
        " + n (z-1)^(n-1) (H(n-1) - H(m)) + n (z-1)^(n-1) log(1/(1-z))"
    )

    def validate(params: Mapping) -> dict:
        z = _rat_param(params, "z")
        if abs(z) >= 1:
            raise ValueError(f"|z| must be < 1, got {z}")
        return {
            "z": z,
            "n": _int_param(params, "n", minimum=1),
            "m": _int_param(params, "m", default=0, minimum=0),
        }

    def start(params: Mapping) -> int:
        return params["m"]

    def term(j: int, params: Mapping) -> mpq:
        z, n = params["z"], params["n"]
        return z ** (n + j) / binomial(n + j, j)

    def j0(params: Mapping) -> int:
        return params["m"]

    def ratio_bound(params: Mapping, j_start: int) -> mpq:
        # |term(j+1)/term(j)| = |z| (j+1)/(n+j+1) <= |z| < 1
        return abs(params["z"])

    def closed(params: Mapping, prec: int) -> Ball:
        z, n, m = params["z"], params["n"], params["m"]
        exact = _sury_closed_parts(z, n, m)
        log_ball = ball_log(ball_from_rational(1 - z, prec))
        coef = n * (z - 1) ** (n - 1)
        return ball_from_rational(exact, prec) - log_ball * coef

    return SeriesFamily(
        id="sury",
        statement=statement,
        param_names=("z", "n", "m"),
        validate=validate,
        start=start,
        term=term,
        j0=j0,
        ratio_bound=ratio_bound,
        closed_form=closed,
    )


def _thm9_family(fam_id: str, kind: str) -> SeriesFamily:
    x = _seq(kind)
    statement = (
        f"(-1)^n/n sum_[j>=m] {kind}(r(n+j)) / (L(r)^(n+j) C(n+j,j)) = "
        f"sum_[j=1..n-1] C(n-1,j)(-1)^j {kind}(r(n-j-1))/(j L(r)^(n-j-1) C(m+j,j)) "
        f"- sum_[j=1..m] C(m,j)(-1)^j {kind}(r(n+j-1))/(j L(r)^(n+j-1) C(n-1+j,j)) "
        f"+ {kind}(r(n-1))/L(r)^(n-1) (H(n-1)-H(m)) + (1/L(r)^(n-1)) ("
        + (
            "F(r(n-1)) log L(r) - r L(r(n-1))/sqrt(5) log phi)"
            if kind == "F"
            else "L(r(n-1)) log L(r) - r F(r(n-1)) sqrt(5) log phi)"
        )
    )

    def validate(params: Mapping) -> dict:
        r = _int_param(params, "r")
        if r % 2:
            raise ValueError(f"r must be even, got {r}")
        out = {
            "r": r,
            "n": _int_param(params, "n", minimum=1),
            "m": _int_param(params, "m", default=0, minimum=0),
            "variant": params.get("variant", "derived") or "derived",
        }
        if out["variant"] not in ("derived", "printed-binomial"):
            raise ValueError(f"unknown variant {out['variant']!r}")
        return out

    def start(params: Mapping) -> int:
        return params["m"]

    def term(j: int, params: Mapping) -> mpq:
        r, n = params["r"], params["n"]
        lr = lucas(r)
        return mpq(x(r * (n + j)), lr ** (n + j) * binomial(n + j, j))

    def _rho(j: int, r: int, n: int) -> Optional[mpq]:
        if r == 0:
            return mpq(1, 2)  # |term ratio| = (1/2)(j+1)/(n+j+1) < 1/2
        k = abs(r) * (n + j)
        if k < 2:
            return None
        return _lucas_power_ratio(abs(r)) * _env_ratio(k)

    def j0(params: Mapping) -> int:
        r, n, m = params["r"], params["n"], params["m"]
        return _search_j0(m, lambda j: _rho(j, r, n))

    def ratio_bound(params: Mapping, j_start: int) -> mpq:
        rho = _rho(j_start, params["r"], params["n"])
        if rho is None or rho >= 1:
            raise ValueError(f"no certified ratio at j0={j_start} for {fam_id}")
        return rho

    def closed(params: Mapping, prec: int) -> Ball:
        r, n, m = params["r"], params["n"], params["m"]
        variant = params["variant"]
        lr = lucas(r)
        # the F combination carries (-1)^n, the L combination (-1)^(n-1)
        sign = (-1) ** (n % 2) if kind == "F" else (-1) ** ((n - 1) % 2)

        s1 = sum(
            binomial(n - 1, j)
            * (-1) ** (j % 2)
            * x(r * (n - j - 1))
            / (j * mpq(lr) ** (n - j - 1) * binomial(m + j, j))
            for j in range(1, n)
        )
        div = (
            (lambda j: binomial(m + j - 1, j))
            if variant == "printed-binomial"
            else (lambda j: binomial(n - 1 + j, j))
        )
        s2 = sum(
            binomial(m, j)
            * (-1) ** (j % 2)
            * x(r * (n + j - 1))
            / (j * mpq(lr) ** (n + j - 1) * div(j))
            for j in range(1, m + 1)
        )
        lpow = mpq(lr) ** (n - 1)
        harm = x(r * (n - 1)) / lpow * (_harmonic(n - 1) - _harmonic(m))
        exact = mpq(s1) - mpq(s2) + harm

        log_lr = ball_log(ball_from_rational(lr, prec))
        log_phi = ball_log(ball_from_quad(ALPHA, prec))
        if kind == "F":
            aux = QuadElement(mpq(0), mpq(r * lucas(r * (n - 1)), 5), mpq(5))
        else:
            aux = QuadElement(mpq(0), mpq(r * fibonacci(r * (n - 1))), mpq(5))
        log_part = (
            log_lr * (x(r * (n - 1)) / lpow)
            - ball_from_quad(aux, prec) * log_phi / lpow
        )
        return (ball_from_rational(exact, prec) + log_part) * (sign * n)

    def stream(params: Mapping) -> Iterator[tuple[int, int, int]]:
        # X(k+r) = L(r) X(k) - X(k-r) for even r; the denominator
        # L(r)^(n+j) C(n+j,j) updates by a small multiplier each step
        r, n, m = params["r"], params["n"], params["m"]
        lr = lucas(r)
        x_prev, x_cur = x(r * (n + m - 1)), x(r * (n + m))
        den = binomial(n + m, m) * lr ** (n + m)
        j = m
        while True:
            yield j, x_cur, den
            j += 1
            den = den * lr * (n + j) // j
            x_prev, x_cur = x_cur, lr * x_cur - x_prev

    return SeriesFamily(
        id=fam_id,
        statement=statement,
        param_names=("r", "n", "m", "variant"),
        validate=validate,
        start=start,
        term=term,
        j0=j0,
        ratio_bound=ratio_bound,
        closed_form=closed,
        term_stream=stream,
    )


# -- base families in a rational variable z ----------------------------------


def _base_family(fam_id: str, flavour: str, statement: str) -> SeriesFamily:
    # flavour: "j" (1/j), "j2" (1/j^2), "plain" (no j factor), "arctan"

    def validate(params: Mapping) -> dict:
        z = _rat_param(params, "z")
        if flavour != "arctan" and abs(z) >= 1:
            raise ValueError(f"|z| must be < 1, got {z}")
        return {"z": z}

    def start(params: Mapping) -> int:
        return 0 if flavour == "arctan" else 1

    def term(j: int, params: Mapping) -> mpq:
        z = params["z"]
        zz = z * z
        if flavour == "arctan":
            w = zz / (1 + zz)
            return 4**j * w ** (j + 1) / ((2 * j + 1) * central_binomial(j))
        base = (4 * zz) ** j / central_binomial(j)
        if flavour == "j":
            return base / j
        if flavour == "j2":
            return base / (j * j)
        return base

    def _rho(j: int, z: mpq) -> Optional[mpq]:
        zz = z * z
        if flavour == "arctan":
            return zz / (1 + zz)  # ratio = 2w(j+1)/(2j+3) < w
        if flavour == "plain":
            rho = 2 * zz * (j + 1) / (2 * j + 1)  # decreasing in j
            return rho if rho < 1 else None
        return zz  # "j": 2 zz j/(2j+1) < zz ; "j2" smaller still

    def j0(params: Mapping) -> int:
        z = params["z"]
        base = 0 if flavour == "arctan" else 1
        return _search_j0(base, lambda j: _rho(j, z))

    def ratio_bound(params: Mapping, j_start: int) -> mpq:
        rho = _rho(j_start, params["z"])
        if rho is None or rho >= 1:
            raise ValueError(f"no certified ratio at j0={j_start} for {fam_id}")
        return rho

    def closed(params: Mapping, prec: int) -> Ball:
        z = params["z"]
        zz = z * z
        if flavour == "arctan":
            bz = ball_from_rational(z, prec)
            return bz * ball_arctan(bz)
        asin = ball_arcsin(ball_from_rational(z, prec))
        if flavour == "j":
            root = ball_sqrt(ball_from_rational(1 - zz, prec))
            return 2 * z * asin / root
        if flavour == "j2":
            return 2 * asin * asin
        root = ball_sqrt(ball_from_rational(1 - zz, prec))
        return ball_from_rational(zz / (1 - zz), prec) + (
            asin * z / (root * (1 - zz))
        )

    return SeriesFamily(
        id=fam_id,
        statement=statement,
        param_names=("z",),
        validate=validate,
        start=start,
        term=term,
        j0=j0,
        ratio_bound=ratio_bound,
        closed_form=closed,
    )


def _bc_family() -> SeriesFamily:
    statement = (
        "sum_[j>=1] H_m(j) z^(2j) / (j^2 C(2j,j)) = (arcsin(z/2))^(2m) / (2m)!"
    )

    def validate(params: Mapping) -> dict:
        z = _rat_param(params, "z")
        if abs(z) >= 2:
            raise ValueError(f"|z| must be < 2, got {z}")
        return {"m": _int_param(params, "m", minimum=1), "z": z}

    def start(params: Mapping) -> int:
        return 1

    def term(j: int, params: Mapping) -> mpq:
        m, z = params["m"], params["z"]
        return hm_weight(m, j) * z ** (2 * j) / (j * j * central_binomial(j))

    def _weight_ratio(m: int, j: int) -> mpq:
        if m == 1:
            return mpq(1)
        hmj = hm_weight(m, j)
        if hmj == 0:
            raise ValueError("weight ratio needs j >= m")
        return 1 + _hm_sup(m - 1) / ((2 * j) ** 2 * hmj)

    def _rho(j: int, m: int, z: mpq) -> Optional[mpq]:
        if j < m:
            return None
        rho = _weight_ratio(m, j) * z * z * mpq(1, 4)
        return rho if rho < 1 else None

    def j0(params: Mapping) -> int:
        m, z = params["m"], params["z"]
        return _search_j0(max(1, m), lambda j: _rho(j, m, z))

    def ratio_bound(params: Mapping, j_start: int) -> mpq:
        rho = _rho(j_start, params["m"], params["z"])
        if rho is None or rho >= 1:
            raise ValueError("no certified ratio for bc_arcsin at this j0")
        return rho

    def closed(params: Mapping, prec: int) -> Ball:
        m, z = params["m"], params["z"]
        asin = ball_arcsin(ball_from_rational(z / 2, prec))
        return (asin ** (2 * m)) * mpq(1, math.factorial(2 * m))

    return SeriesFamily(
        id="bc_arcsin",
        statement=statement,
        param_names=("m", "z"),
        validate=validate,
        start=start,
        term=term,
        j0=j0,
        ratio_bound=ratio_bound,
        closed_form=closed,
    )


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

FAMILIES: dict[str, SeriesFamily] = {}


def _register(fam: SeriesFamily) -> None:
    if fam.id in FAMILIES:
        raise ValueError(f"duplicate series family {fam.id}")
    FAMILIES[fam.id] = fam


_register(
    _base_family(
        "lehmer.j",
        "j",
        "sum_[j>=1] (2z)^(2j) / (j C(2j,j)) = 2z arcsin(z)/sqrt(1-z^2)",
    )
)
_register(
    _base_family(
        "lehmer.j2",
        "j2",
        "sum_[j>=1] (2z)^(2j) / (j^2 C(2j,j)) = 2 arcsin(z)^2",
    )
)
_register(
    _base_family(
        "lehmer.plain",
        "plain",
        "sum_[j>=1] (2z)^(2j) / C(2j,j) = z^2/(1-z^2) + z arcsin(z)/(1-z^2)^(3/2)",
    )
)
_register(
    _base_family(
        "euler_arctan",
        "arctan",
        "sum_[j>=0] 2^(2j)/((2j+1) C(2j,j)) (z^2/(1+z^2))^(j+1) = z arctan(z)",
    )
)
_register(_bc_family())
_register(
    _central_family(
        "thm5.F",
        "F",
        1,
        "sum_[j>=1] F(2j+s)/(j C(2j,j)) = (F(s+1) sqrt(5) - F(s-1)) (pi/5) sqrt(phi^3/sqrt(5))",
    )
)
_register(
    _central_family(
        "thm5.L",
        "L",
        1,
        "sum_[j>=1] L(2j+s)/(j C(2j,j)) = (L(s+1) sqrt(5) - L(s-1)) (pi/5) sqrt(phi^3/sqrt(5))",
    )
)
_register(
    _central_family(
        "sq.F",
        "F",
        2,
        "sum_[j>=1] F(2j+s)/(j^2 C(2j,j)) = pi^2/(5 sqrt(5)) (phi^s - L(s)/10)",
    )
)
_register(
    _central_family(
        "sq.L",
        "L",
        2,
        "sum_[j>=1] L(2j+s)/(j^2 C(2j,j)) = 2 pi^2/25 (2 phi^s + L(s)/4)",
    )
)
_register(
    _central_family(
        "thm7.F",
        "F",
        0,
        "sum_[j>=1] F(2j+s)/C(2j,j) = L(s+3)/5 + (L(s+2) sqrt(5) - L(s)) (2pi/25) sqrt(phi^3/sqrt(5))",
    )
)
_register(
    _central_family(
        "thm7.L",
        "L",
        0,
        "sum_[j>=1] L(2j+s)/C(2j,j) = F(s+3) + (F(s+2) sqrt(5) - F(s)) (2pi/5) sqrt(phi^3/sqrt(5))",
    )
)
_register(_hm_family("hm.F", "F"))
_register(_hm_family("hm.L", "L"))
_register(_thm8_family("thm8.F", "F"))
_register(_thm8_family("thm8.L", "L"))
_register(_thm9_family("thm9.F", "F"))
_register(_thm9_family("thm9.L", "L"))
_register(_sury_family())


def _resolve(family: Union[str, SeriesFamily]) -> SeriesFamily:
    if isinstance(family, SeriesFamily):
        return family
    try:
        return FAMILIES[family]
    except KeyError:
        raise KeyError(f"unknown series family {family!r}") from None


# ---------------------------------------------------------------------------
# engine operations
# ---------------------------------------------------------------------------


def partial_sum(
    family: Union[str, SeriesFamily], params: Mapping, upto: int, prec: int = 256
) -> Ball:
    """Ball containing sum_{j=start..upto} term(j); each exact term is
    rounded once at ``prec`` and accumulated with radius tracking."""
    fam = _resolve(family)
    p = fam.validate(params)
    start = fam.start(p)
    if upto < start:
        raise ValueError(f"upto={upto} is below the series start {start}")
    acc = ball_from_rational(0, prec)
    if fam.term_stream is not None:
        gen = fam.term_stream(p)
        for j, num, den in gen:
            if j > upto:
                break
            acc = acc + ball_from_int_ratio(num, den, prec)
        return acc
    for j in range(start, upto + 1):
        acc = acc + ball_from_rational(fam.term(j, p), prec)
    return acc


def tail_bound(
    family: Union[str, SeriesFamily], params: Mapping, after: int, prec: int = 256
) -> Ball:
    """Ball whose upper endpoint certifies sum_{j > after} |term(j)|,
    via |term(after)| * rho / (1 - rho)."""
    fam = _resolve(family)
    p = fam.validate(params)
    threshold = fam.j0(p)
    if after < threshold:
        raise ValueError(
            f"tail bound valid only from j0={threshold}, got N={after}"
        )
    rho = fam.ratio_bound(p, after)
    t = abs(fam.term(after, p)) * rho / (1 - rho)
    return ball_from_rational(t, prec)


def closed_form(
    family: Union[str, SeriesFamily], params: Mapping, prec: int = 256
) -> Ball:
    """Certified enclosure of the family's closed-form value."""
    fam = _resolve(family)
    p = fam.validate(params)
    return fam.closed_form(p, prec)


def _fmt_ball(b: Ball) -> str:
    return f"{b.mid} +/- {b.rad}"


def _fmt_gap(g: mpq) -> str:
    if g == 0:
        return "0"
    f = float(g)
    if f != 0:
        return f"{f:.6e}"
    # smaller than the float range: render via a scaled estimate
    num, den = g.numerator, g.denominator
    exp10 = len(str(abs(num))) - len(str(den))
    return f"~1e{exp10}"


def verify_series(
    family: Union[str, SeriesFamily],
    params: Mapping,
    tol: RationalLike = mpq(1, 10**30),
    prec: int = 256,
    max_terms: int = DEFAULT_MAX_TERMS,
    rhs_override: Optional[Ball] = None,
) -> VerificationRecord:
    """Adaptively sum the series until the certified tail and the
    accumulated radius both fit inside tol/4, then compare the enclosure
    with the closed form.  Status semantics:

    * VERIFIED_NUMERIC: |series - closed form| <= tol, certified;
    * REFUTED:          |series - closed form| >  tol, certified;
    * INCONCLUSIVE:     the budget (max_terms) or precision is exhausted.

    ``rhs_override`` substitutes an externally built enclosure for the
    family's closed form (used to pin the series against a literal
    constant instead of the registered right side).
    """
    fam = _resolve(family)
    p = fam.validate(params)
    tol_q = _as_mpq(tol)
    if tol_q <= 0:
        raise ValueError(f"tolerance must be positive, got {tol_q}")
    t_start = time.perf_counter()
    start = fam.start(p)
    threshold = fam.j0(p)
    budget = tol_q / 4

    acc = ball_from_rational(0, prec)
    tail = None
    detail = ""
    n_used = 0
    j = start
    gen = fam.term_stream(p) if fam.term_stream is not None else None
    while True:
        if gen is not None:
            jj, num, den = next(gen)
            assert jj == j
            acc = acc + ball_from_int_ratio(num, den, prec)
        else:
            t = fam.term(j, p)
            acc = acc + ball_from_rational(t, prec)
        n_used += 1
        if j >= threshold:
            rho = fam.ratio_bound(p, j)
            # tail <= |term(j)| rho/(1-rho); compare without normalizing
            if gen is not None:
                fits = abs(num) * rho.numerator * budget.denominator <= den * (
                    rho.denominator - rho.numerator
                ) * budget.numerator
                tail_q = (
                    mpq(abs(num), den) * rho / (1 - rho) if fits else None
                )
            else:
                tail_q = abs(t) * rho / (1 - rho)
                fits = tail_q <= budget
            if fits:
                if mpq(acc.rad) <= budget:
                    tail = tail_q
                else:
                    # summing more terms only grows the radius
                    detail = "accumulated radius exceeds tol/4; raise precision"
                break
        if n_used >= max_terms:
            detail = f"term budget of {max_terms} exhausted before the tail closed"
            break
        j += 1

    rhs = rhs_override if rhs_override is not None else fam.closed_form(p, prec)
    elapsed = time.perf_counter() - t_start
    shown = {k: str(v) for k, v in p.items()}

    if tail is None:
        return VerificationRecord(
            id=fam.id,
            params=shown,
            status=Status.INCONCLUSIVE,
            lhs=_fmt_ball(acc),
            rhs=_fmt_ball(rhs),
            gap=None,
            tol=str(tol_q),
            prec=prec,
            terms_used=n_used,
            wall_time=elapsed,
            statement=fam.statement,
            detail=detail,
        )

    enclosure = acc.inflate(tail)
    outcome = ball_compare(enclosure, rhs, tol_q)
    status = {
        ComparisonOutcome.OVERLAP_WITHIN_TOL: Status.VERIFIED_NUMERIC,
        ComparisonOutcome.DISJOINT_BEYOND_TOL: Status.REFUTED,
        ComparisonOutcome.INCONCLUSIVE: Status.INCONCLUSIVE,
    }[outcome]
    gap = abs(mpq(enclosure.mid) - mpq(rhs.mid))
    return VerificationRecord(
        id=fam.id,
        params=shown,
        status=status,
        lhs=_fmt_ball(enclosure),
        rhs=_fmt_ball(rhs),
        gap=_fmt_gap(gap),
        tol=str(tol_q),
        prec=prec,
        terms_used=n_used,
        wall_time=time.perf_counter() - t_start,
        statement=fam.statement,
    )
