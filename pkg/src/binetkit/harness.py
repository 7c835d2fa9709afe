"""Identity registry, parameter sweeps, and structured reports.

Every identity in scope has exactly one :class:`IdentityDescriptor`,
addressed by a stable id ("eq1", "thm3.F", "hm.L", ...).  Exact (finite)
identities verify by literal equality of both exactly evaluated sides;
series identities verify through the certified ball pipeline, with
precision doubled on inconclusive outcomes up to ``max_prec``.

Reports serialize deterministically: records are sorted, and the
wall_time field is nulled in json/csv so re-running a sweep with the
same settings yields byte-identical bytes.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from gmpy2 import mpq

from . import finite
from . import series as series_mod
from .quadratic import ALPHA, BETA, QuadElement, roots_of
from .records import Status, VerificationRecord
from .sequences import HoradamParams

__all__ = [
    "IdentityDescriptor",
    "VerifySettings",
    "REGISTRY",
    "sweep",
    "default_records",
    "run_identity",
    "report",
    "failure_count",
]

DEFAULT_TOL = mpq(1, 10**30)
DEFAULT_PREC = 256
DEFAULT_MAX_PREC = 4096


@dataclass(frozen=True)
class VerifySettings:
    tol: mpq = DEFAULT_TOL
    prec: int = DEFAULT_PREC
    max_terms: int = series_mod.DEFAULT_MAX_TERMS
    max_prec: int = DEFAULT_MAX_PREC

    def __post_init__(self) -> None:
        object.__setattr__(self, "tol", mpq(self.tol))
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.prec < 16:
            raise ValueError("prec must be at least 16 bits")


@dataclass(frozen=True)
class ParamSpec:
    kind: str  # "int" | "rational" | "z" | "choice"
    minimum: Optional[int] = None
    choices: Optional[tuple] = None
    default: Optional[object] = None
    required: bool = True


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    mode: str  # "exact" | "series"
    param_schema: Mapping[str, ParamSpec]
    statement: str
    runner: Callable[[dict, VerifySettings], VerificationRecord]
    default_grid: Callable[[], list]


# named weighted-power evaluation points over quadratic fields
_PELL = roots_of(2, -1)
_Z_TOKENS: dict[str, QuadElement] = {
    "alpha": ALPHA,
    "beta": BETA,
    "alpha/2": ALPHA / 2,
    "-beta/2": -BETA / 2,
    "alpha^3": ALPHA**3,
    "-alpha^3": -(ALPHA**3),
    "alpha^2/beta^2": ALPHA**2 / BETA**2,
    "pell:tau^2/sigma^2": _PELL.tau**2 / _PELL.sigma**2,
}


def _parse_rational(v) -> mpq:
    if isinstance(v, bool):
        raise ValueError(f"expected a rational, got {v!r}")
    if isinstance(v, (int, mpq)):
        return mpq(v)
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    if isinstance(v, str):
        return mpq(v)
    raise ValueError(f"expected a rational, got {v!r}")


def _validate_params(desc: "IdentityDescriptor", params: Mapping) -> dict:
    out: dict = {}
    for name, spec in desc.param_schema.items():
        if name not in params or params[name] is None:
            if spec.required and spec.default is None:
                raise ValueError(f"{desc.id}: missing parameter {name!r}")
            if spec.default is not None:
                out[name] = spec.default
            continue
        v = params[name]
        if spec.kind == "int":
            if isinstance(v, str):
                v = int(v)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"{desc.id}: parameter {name!r} must be an integer")
            if spec.minimum is not None and v < spec.minimum:
                raise ValueError(
                    f"{desc.id}: parameter {name!r} must be >= {spec.minimum}, got {v}"
                )
            out[name] = v
        elif spec.kind == "rational":
            out[name] = _parse_rational(v)
        elif spec.kind == "z":
            if isinstance(v, QuadElement):
                out[name] = v
            elif isinstance(v, str) and v in _Z_TOKENS:
                out[name] = v  # keep the token; runner resolves it
            else:
                out[name] = _parse_rational(v)
        elif spec.kind == "choice":
            if v not in spec.choices:
                raise ValueError(
                    f"{desc.id}: parameter {name!r} must be one of {spec.choices}, got {v!r}"
                )
            out[name] = v
        else:  # pragma: no cover - registry construction error
            raise ValueError(f"bad spec kind {spec.kind}")
    extra = set(params) - set(desc.param_schema)
    if extra:
        raise ValueError(f"{desc.id}: unknown parameters {sorted(extra)}")
    return out


# ---------------------------------------------------------------------------
# exact runners
# ---------------------------------------------------------------------------


def _fmt_exact(v) -> str:
    return str(v)


def _exact_record(
    ident: str, params: Mapping, pair: finite.SidePair, statement: str, elapsed: float
) -> VerificationRecord:
    status = Status.VERIFIED_EXACT if pair.equal else Status.REFUTED
    if isinstance(pair.lhs, QuadElement) or isinstance(pair.rhs, QuadElement):
        gap = "0" if pair.equal else str(pair.lhs - pair.rhs)
    else:
        gap = str(abs(pair.lhs - pair.rhs))
    return VerificationRecord(
        id=ident,
        params={k: str(v) for k, v in params.items()},
        status=status,
        lhs=_fmt_exact(pair.lhs),
        rhs=_fmt_exact(pair.rhs),
        gap=gap,
        tol=None,
        prec=None,
        terms_used=None,
        wall_time=elapsed,
        statement=statement,
    )


def _make_exact_runner(ident: str, statement: str, sides: Callable[..., finite.SidePair]):
    def run(params: dict, settings: VerifySettings) -> VerificationRecord:
        t0 = time.perf_counter()
        pair = sides(**params)
        return _exact_record(ident, params, pair, statement, time.perf_counter() - t0)

    return run


def _gould_runner(params: dict, settings: VerifySettings) -> VerificationRecord:
    t0 = time.perf_counter()
    z = params["z"]
    z_value = _Z_TOKENS[z] if isinstance(z, str) else z
    pair = finite.gould_sides(z_value, params["n"])
    shown = {"n": params["n"], "z": z}
    return _exact_record(
        "gould_check",
        shown,
        pair,
        _STATEMENTS["gould_check"],
        time.perf_counter() - t0,
    )


def _horadam_runner(params: dict, settings: VerifySettings) -> VerificationRecord:
    t0 = time.perf_counter()
    hp = HoradamParams(params["a"], params["b"], params["p"], params["q"])
    pair = finite.horadam_sides(params["n"], params["r"], params["s"], hp)
    return _exact_record(
        "horadam.w",
        params,
        pair,
        _STATEMENTS["horadam.w"],
        time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# series runner with precision escalation
# ---------------------------------------------------------------------------


def _make_series_runner(fam_id: str):
    def run(params: dict, settings: VerifySettings) -> VerificationRecord:
        prec = settings.prec
        record = None
        while True:
            record = series_mod.verify_series(
                fam_id, params, tol=settings.tol, prec=prec, max_terms=settings.max_terms
            )
            if record.status is not Status.INCONCLUSIVE or prec * 2 > settings.max_prec:
                return record
            prec *= 2

    return run


# ---------------------------------------------------------------------------
# default grids (the acceptance grids)
# ---------------------------------------------------------------------------

_N_GRID = range(0, 31)
_R_GRID = range(-8, 9)
_S_GRID = range(-25, 26)

HORADAM_PARAM_SETS: tuple[tuple, ...] = (
    (0, 1, 1, -1),
    (2, 1, 1, -1),
    (0, 1, 2, -1),
    (0, 1, 1, -2),
    (1, 3, 3, 1),
)


def _lcg_pairs(count: int, seed: int = 0x5F1B0) -> list[tuple[mpq, int]]:
    """Deterministic (z, n) sample points: |num| <= 50, 1 <= den <= 50,
    z != -1, 0 <= n <= 25.  A plain LCG keeps this reproducible across
    interpreter versions."""
    state = seed
    out: list[tuple[mpq, int]] = []

    def nxt() -> int:
        nonlocal state
        state = (6364136223846793005 * state + 1442695040888963407) % (1 << 64)
        return state >> 16

    while len(out) < count:
        num = nxt() % 101 - 50
        den = nxt() % 50 + 1
        n = nxt() % 26
        z = mpq(num, den)
        if z == -1:
            continue
        out.append((z, n))
    return out


def _gould_grid() -> list:
    cells = [{"z": str(z), "n": n} for z, n in _lcg_pairs(200)]
    for token in _Z_TOKENS:
        cells.extend({"z": token, "n": n} for n in range(0, 16))
    return cells


def _grid(**axes: Iterable) -> list:
    names = list(axes)
    return [dict(zip(names, combo)) for combo in itertools.product(*axes.values())]


def _horadam_grid() -> list:
    cells = []
    for a, b, p, q in HORADAM_PARAM_SETS:
        if mpq(p) ** 2 - 4 * mpq(q) <= 0:
            continue
        for n in _N_GRID:
            for r in _R_GRID:
                for s in _S_GRID:
                    cells.append(
                        {"n": n, "r": r, "s": s, "a": a, "b": b, "p": p, "q": q}
                    )
    return cells


_STATEMENTS = {
    "eq1": "sum_[j=0..n] 1/C(n,j) = (n+1)/2^n sum_[j=0..n] 2^j/(j+1)",
    "gould_check": (
        "sum_[j=0..n] z^j/C(n,j) = (n+1) (z/(1+z))^n 1/(1+z) "
        "sum_[j=0..n] (1+z^(j+1))/(j+1) ((1+z)/z)^j   (z != -1)"
    ),
    "thm1.F": "sum_[j=0..n] F(j+n+s)/C(n,j) = (n+1) sum_[j=0..n] (F(j+s-2)+F(2j+s-1))/(j+1)",
    "thm1.L": "sum_[j=0..n] L(j+n+s)/C(n,j) = (n+1) sum_[j=0..n] (L(j+s-2)+L(2j+s-1))/(j+1)",
    "thm2.F": (
        "sum_[j=0..2n] F(j+s)/(2^(j+s) C(2n,j)) = 2^(1-s) (2n+1)/5^(n+1) "
        "(F(s-1) sum 5^j/(2j) + L(s-1) sum 5^j/(2j+1) "
        "+ sum 5^j F(2j+s-1)/(2^(2j) 2j) + sum 5^j L(2j+s)/(2^(2j+1)(2j+1)))"
    ),
    "thm2.L": (
        "sum_[j=0..2n] L(j+s)/(2^(j+s) C(2n,j)) = 2^(1-s) (2n+1)/5^n "
        "(F(s-1) sum 5^j/(2j+1) + L(s-1) sum 5^(j-1)/(2j) "
        "+ sum 5^j F(2j+s)/(2^(2j+1)(2j+1)) + sum 5^(j-1) L(2j+s-1)/(2^(2j) 2j))"
    ),
    "thm3.F": (
        "sum_[j=0..n] (-1)^(rj) F(2rj+s)/C(n,j) = "
        "(n+1) F(rn+s)/L(r)^(n+1) sum_[j=0..n] (-1)^(rj) L(r)^j L(r(j+1))/(j+1)"
    ),
    "thm3.L": (
        "sum_[j=0..n] (-1)^(rj) L(2rj+s)/C(n,j) = "
        "(n+1) L(rn+s)/L(r)^(n+1) sum_[j=0..n] (-1)^(rj) L(r)^j L(r(j+1))/(j+1)"
    ),
    "horadam.w": (
        "sum_[j=0..n] w(2rj+s)/(q^(rj) C(n,j)) = "
        "(n+1) w(rn+s)/v(r)^(n+1) sum_[j=0..n] v(r)^j v(r(j+1))/(q^(rj)(j+1))"
    ),
    "thm4.plain.F": (
        "sum_[j=0..n] F(3j+s-n)/C(n,j) = "
        "(n+1)/2^(n+1) sum_[j=0..n] 2^j/(j+1) (F(s+2j+1)+F(s-j-2))"
    ),
    "thm4.plain.L": (
        "sum_[j=0..n] L(3j+s-n)/C(n,j) = "
        "(n+1)/2^(n+1) sum_[j=0..n] 2^j/(j+1) (L(s+2j+1)+L(s-j-2))"
    ),
    "thm4.alt.F": (
        "sum_[j=0..n] (-1)^j F(3j+s-2n)/C(n,j) = "
        "(n+1)/2^(n+1) sum_[j=0..n] 2^j (-1)^j/(j+1) (F(s+j+2)+(-1)^(j-1) F(s-2j-1))"
    ),
    "thm4.alt.L": (
        "sum_[j=0..n] (-1)^j L(3j+s-2n)/C(n,j) = "
        "(n+1)/2^(n+1) sum_[j=0..n] 2^j (-1)^j/(j+1) (L(s+j+2)+(-1)^(j-1) L(s-2j-1))"
    ),
}


def _int_spec(minimum=None) -> ParamSpec:
    return ParamSpec(kind="int", minimum=minimum)


REGISTRY: dict[str, IdentityDescriptor] = {}


def _register(desc: IdentityDescriptor) -> None:
    if desc.id in REGISTRY:
        raise ValueError(f"duplicate identity id {desc.id}")
    REGISTRY[desc.id] = desc


def _register_exact(
    ident: str,
    schema: Mapping[str, ParamSpec],
    sides: Callable[..., finite.SidePair],
    grid: Callable[[], list],
    runner: Optional[Callable] = None,
) -> None:
    _register(
        IdentityDescriptor(
            id=ident,
            mode="exact",
            param_schema=schema,
            statement=_STATEMENTS[ident],
            runner=runner or _make_exact_runner(ident, _STATEMENTS[ident], sides),
            default_grid=grid,
        )
    )


_register_exact(
    "eq1",
    {"n": _int_spec(0)},
    finite.eq1_sides,
    lambda: _grid(n=_N_GRID),
)
_register_exact(
    "gould_check",
    {"n": _int_spec(0), "z": ParamSpec(kind="z")},
    finite.gould_sides,
    _gould_grid,
    runner=_gould_runner,
)
for _kind in ("F", "L"):
    _register_exact(
        f"thm1.{_kind}",
        {"n": _int_spec(0), "s": _int_spec()},
        (lambda k: lambda n, s: finite.thm1_sides(n, s, k))(_kind),
        lambda: _grid(n=_N_GRID, s=_S_GRID),
    )
    _register_exact(
        f"thm2.{_kind}",
        {"n": _int_spec(0), "s": _int_spec()},
        (lambda k: lambda n, s: finite.thm2_sides(n, s, k))(_kind),
        lambda: _grid(n=_N_GRID, s=_S_GRID),
    )
    _register_exact(
        f"thm3.{_kind}",
        {"n": _int_spec(0), "r": _int_spec(), "s": _int_spec()},
        (lambda k: lambda n, r, s: finite.thm3_sides(n, r, s, k))(_kind),
        lambda: _grid(n=_N_GRID, r=_R_GRID, s=_S_GRID),
    )
    for _variant in ("plain", "alt"):
        _register_exact(
            f"thm4.{_variant}.{_kind}",
            {"n": _int_spec(0), "s": _int_spec()},
            (lambda k, v: lambda n, s: finite.thm4_sides(n, s, v, k))(_kind, _variant),
            lambda: _grid(n=_N_GRID, s=_S_GRID),
        )

_register(
    IdentityDescriptor(
        id="horadam.w",
        mode="exact",
        param_schema={
            "n": _int_spec(0),
            "r": _int_spec(),
            "s": _int_spec(),
            "a": ParamSpec(kind="rational"),
            "b": ParamSpec(kind="rational"),
            "p": ParamSpec(kind="rational"),
            "q": ParamSpec(kind="rational"),
        },
        statement=_STATEMENTS["horadam.w"],
        runner=_horadam_runner,
        default_grid=_horadam_grid,
    )
)


def _series_schema(fam: series_mod.SeriesFamily) -> dict[str, ParamSpec]:
    schema: dict[str, ParamSpec] = {}
    for name in fam.param_names:
        if name == "z":
            schema[name] = ParamSpec(kind="rational")
        elif name == "variant":
            choices = (
                ("theorem", "paper-printed")
                if fam.id.startswith("hm.")
                else ("derived", "printed-binomial")
            )
            schema[name] = ParamSpec(
                kind="choice", choices=choices, default=choices[0], required=False
            )
        elif name in ("m", "n"):
            schema[name] = _int_spec(0 if name == "m" else None)
        else:
            schema[name] = _int_spec()
    return schema


_SERIES_GRIDS: dict[str, Callable[[], list]] = {
    "lehmer.j": lambda: [{"z": mpq(1, 2)}],
    "lehmer.j2": lambda: [{"z": mpq(1, 2)}],
    "lehmer.plain": lambda: [{"z": mpq(1, 3)}],
    "euler_arctan": lambda: [{"z": mpq(1)}, {"z": mpq(2)}],
    "bc_arcsin": lambda: _grid(m=(1, 2), z=(mpq(1),)),
    "thm5.F": lambda: _grid(s=range(-5, 6)),
    "thm5.L": lambda: _grid(s=range(-5, 6)),
    "sq.F": lambda: _grid(s=range(-3, 4)),
    "sq.L": lambda: _grid(s=range(-3, 4)),
    "thm7.F": lambda: _grid(s=range(-4, 5)),
    "thm7.L": lambda: _grid(s=range(-4, 5)),
    "hm.F": lambda: _grid(m=(1, 2), s=range(-2, 3)),
    "hm.L": lambda: _grid(m=(1, 2), s=range(-2, 3)),
    "thm8.F": lambda: _grid(r=range(0, 4), s=range(-4, 5)),
    "thm8.L": lambda: _grid(r=range(0, 4), s=range(-4, 5)),
    "thm9.F": lambda: _grid(r=(2, 4), n=range(1, 5), m=range(0, 4)),
    "thm9.L": lambda: _grid(r=(2, 4), n=range(1, 5), m=range(0, 4)),
    "sury": lambda: _grid(z=(mpq(1, 3), mpq(-1, 2)), n=range(1, 5), m=range(0, 4)),
}

for _fam in series_mod.FAMILIES.values():
    _register(
        IdentityDescriptor(
            id=_fam.id,
            mode="series",
            param_schema=_series_schema(_fam),
            statement=_fam.statement,
            runner=_make_series_runner(_fam.id),
            default_grid=_SERIES_GRIDS[_fam.id],
        )
    )


# ---------------------------------------------------------------------------
# sweeping and reporting
# ---------------------------------------------------------------------------


def run_identity(
    ident: str, params: Mapping, settings: Optional[VerifySettings] = None
) -> VerificationRecord:
    """Verify a single identity at a single parameter point."""
    settings = settings or VerifySettings()
    try:
        desc = REGISTRY[ident]
    except KeyError:
        raise KeyError(f"unknown identity {ident!r}") from None
    normalized = _validate_params(desc, params)
    return desc.runner(normalized, settings)


def sweep(
    ids: Sequence[str],
    grid: Mapping[str, Iterable],
    settings: Optional[VerifySettings] = None,
) -> list[VerificationRecord]:
    """One record per (id, grid point); deterministic ordering."""
    settings = settings or VerifySettings()
    records: list[VerificationRecord] = []
    axes = {k: list(v) for k, v in grid.items()}
    for ident in ids:
        if ident not in REGISTRY:
            raise KeyError(f"unknown identity {ident!r}")
        desc = REGISTRY[ident]
        unknown = set(axes) - set(desc.param_schema)
        if unknown:
            raise ValueError(f"{ident}: parameters {sorted(unknown)} not in schema")
        for cell in _grid(**axes):
            records.append(desc.runner(_validate_params(desc, cell), settings))
    records.sort(key=lambda r: r.sort_key())
    return records


def default_records(
    ids: Optional[Sequence[str]] = None,
    settings: Optional[VerifySettings] = None,
) -> list[VerificationRecord]:
    """Run each identity over its registered default grid."""
    settings = settings or VerifySettings()
    records: list[VerificationRecord] = []
    for ident in ids if ids is not None else sorted(REGISTRY):
        if ident not in REGISTRY:
            raise KeyError(f"unknown identity {ident!r}")
        desc = REGISTRY[ident]
        for cell in desc.default_grid():
            records.append(desc.runner(_validate_params(desc, cell), settings))
    records.sort(key=lambda r: r.sort_key())
    return records


def failure_count(
    records: Sequence[VerificationRecord], expect_refuted: Iterable[str] = ()
) -> int:
    """Number of records that should fail a run: REFUTED (unless the id is
    expected to refute) and INCONCLUSIVE ones."""
    expected = set(expect_refuted)
    bad = 0
    for rec in records:
        if rec.status is Status.INCONCLUSIVE:
            bad += 1
        elif rec.status is Status.REFUTED and rec.id not in expected:
            bad += 1
    return bad


def _params_str(params: Mapping) -> str:
    return ";".join(f"{k}={v}" for k, v in sorted(params.items()))


_CSV_FIELDS = [
    "id",
    "params",
    "status",
    "lhs",
    "rhs",
    "gap",
    "tol",
    "prec",
    "terms_used",
    "wall_time",
    "statement",
]


def report(records: Sequence[VerificationRecord], fmt: str = "text") -> bytes:
    """Serialize records; json is an array of objects with stable field
    names, csv has a header row, text is a human-readable table with a
    status-count footer.  json/csv null the wall_time field so identical
    runs produce identical bytes."""
    ordered = sorted(records, key=lambda r: r.sort_key())
    if fmt == "json":
        payload = [rec.as_dict(reproducible=True) for rec in ordered]
        return (json.dumps(payload, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_CSV_FIELDS)
        for rec in ordered:
            d = rec.as_dict(reproducible=True)
            writer.writerow(
                [
                    d["id"],
                    _params_str(d["params"]),
                    d["status"],
                    d["lhs"],
                    d["rhs"],
                    d["gap"] if d["gap"] is not None else "",
                    d["tol"] if d["tol"] is not None else "",
                    d["prec"] if d["prec"] is not None else "",
                    d["terms_used"] if d["terms_used"] is not None else "",
                    "",  # wall_time nulled for reproducibility
                    d["statement"],
                ]
            )
        return buf.getvalue().encode()
    if fmt == "text":
        lines = []
        counts: dict[str, int] = {}
        for rec in ordered:
            counts[rec.status.value] = counts.get(rec.status.value, 0) + 1
            lhs = rec.lhs if len(rec.lhs) <= 48 else rec.lhs[:45] + "..."
            rhs = rec.rhs if len(rec.rhs) <= 48 else rec.rhs[:45] + "..."
            gap = f" gap={rec.gap}" if rec.gap is not None else ""
            wall = f" t={rec.wall_time:.3f}s" if rec.wall_time is not None else ""
            lines.append(
                f"{rec.status.value:17s} {rec.id:15s} {_params_str(rec.params):40s} "
                f"lhs={lhs} rhs={rhs}{gap}{wall}"
            )
        footer = "status counts: " + ", ".join(
            f"{k}={v}" for k, v in sorted(counts.items())
        )
        lines.append(footer if counts else "status counts: (no records)")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown report format {fmt!r}")
