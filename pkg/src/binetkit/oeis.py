"""OEIS b-file ingestion and sequence cross-checks.

b-files are plain text: one "index value" pair per line, '#' comments
and blank lines ignored.  Fixtures for the sequences this library can
generate are bundled under ``binetkit/data/bfiles`` so the default test
path is fully offline; ``fetch_bfile`` exists for explicit online use.

Generators are wired for A000045 (Fibonacci), A000032 (Lucas), A000129
(Pell, u(2,-1)), A001045 (Jacobsthal, u(1,-2)), A002450 ((4^n-1)/3,
u(5,4)) and A014551 (Jacobsthal-Lucas, v(1,-2)).  A001582 is bundled as
data only (products F(n)*Pell(n) satisfy no second-order recurrence of
this family).
"""

from __future__ import annotations

import importlib.resources
import re
import time
from dataclasses import dataclass
from typing import Callable, IO, Optional, Union

from .records import Status, VerificationRecord
from .sequences import fibonacci, lucas, lucas_uv

__all__ = [
    "BFile",
    "BFileParseError",
    "load_bfile",
    "serialize_bfile",
    "bundled_anums",
    "load_fixture",
    "cross_check",
    "fetch_bfile",
    "GENERATORS",
]

_ANUM_RE = re.compile(r"\AA\d{6}\Z")


class BFileParseError(ValueError):
    def __init__(self, message: str, line_no: int) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class BFile:
    anum: str
    entries: tuple[tuple[int, int], ...]

    def first_index(self) -> int:
        return self.entries[0][0]

    def last_index(self) -> int:
        return self.entries[-1][0]

    def value(self, index: int) -> int:
        lo = self.first_index()
        if not lo <= index <= self.last_index():
            raise IndexError(
                f"{self.anum}: index {index} outside fixture range "
                f"[{lo}, {self.last_index()}]"
            )
        return self.entries[index - lo][1]


def load_bfile(source: Union[str, bytes, IO], anum: str = "") -> BFile:
    """Parse b-file text; malformed lines are rejected with their number."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("ascii")
    entries: list[tuple[int, int]] = []
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileParseError(f"expected 'index value', got {raw!r}", line_no)
        try:
            idx, val = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileParseError(f"non-integer field in {raw!r}", line_no) from None
        if entries and idx <= entries[-1][0]:
            raise BFileParseError(
                f"index {idx} does not increase past {entries[-1][0]}", line_no
            )
        entries.append((idx, val))
    if not entries:
        raise BFileParseError("no entries found", 0)
    return BFile(anum=anum, entries=tuple(entries))


def serialize_bfile(bfile: BFile) -> str:
    """Canonical text: entries only, comments normalized away."""
    return "\n".join(f"{i} {v}" for i, v in bfile.entries) + "\n"


GENERATORS: dict[str, Optional[Callable[[int], int]]] = {
    "A000045": fibonacci,
    "A000032": lucas,
    "A000129": lambda j: int(lucas_uv(j, 2, -1)[0]),
    "A001045": lambda j: int(lucas_uv(j, 1, -2)[0]),
    "A002450": lambda j: int(lucas_uv(j, 5, 4)[0]),
    "A014551": lambda j: int(lucas_uv(j, 1, -2)[1]),
    "A001582": None,  # data-only
}


def bundled_anums() -> list[str]:
    root = importlib.resources.files("binetkit.data") / "bfiles"
    return sorted(
        "A" + p.name[1:7]
        for p in root.iterdir()
        if p.name.startswith("b") and p.name.endswith(".txt")
    )


def load_fixture(anum: str) -> BFile:
    if not _ANUM_RE.match(anum):
        raise ValueError(f"malformed sequence id {anum!r} (expected 'A' + 6 digits)")
    resource = importlib.resources.files("binetkit.data") / "bfiles" / f"b{anum[1:]}.txt"
    try:
        text = resource.read_text()
    except FileNotFoundError:
        raise FileNotFoundError(f"no bundled fixture for {anum}") from None
    return load_bfile(text, anum=anum)


def cross_check(
    anum: str,
    generator: Optional[Callable[[int], int]] = None,
    index_range: Optional[range] = None,
    bfile: Optional[BFile] = None,
) -> VerificationRecord:
    """Compare fixture entries against a generator over ``index_range``.

    VERIFIED_EXACT iff every fixture entry in range equals the generator
    output; the first mismatch is reported and certifies REFUTED.
    """
    t0 = time.perf_counter()
    if bfile is None:
        bfile = load_fixture(anum)
    if generator is None:
        generator = GENERATORS.get(anum)
        if generator is None:
            raise ValueError(f"{anum} has no generator mapping (data-only fixture)")
    if index_range is None:
        index_range = range(bfile.first_index(), bfile.last_index() + 1)

    checked = 0
    for idx in index_range:
        expected = bfile.value(idx)  # raises IndexError when out of fixture range
        got = generator(idx)
        checked += 1
        if got != expected:
            return VerificationRecord(
                id=f"oeis.{anum}",
                params={"range": f"{index_range.start}..{index_range.stop - 1}"},
                status=Status.REFUTED,
                lhs=str(got),
                rhs=str(expected),
                gap=str(abs(got - expected)),
                terms_used=checked,
                wall_time=time.perf_counter() - t0,
                statement=f"generator values must match the {anum} fixture",
                detail=f"first mismatch at index {idx}",
            )
    return VerificationRecord(
        id=f"oeis.{anum}",
        params={"range": f"{index_range.start}..{index_range.stop - 1}"},
        status=Status.VERIFIED_EXACT,
        lhs=f"{checked} generated values",
        rhs=f"{checked} fixture values",
        gap="0",
        terms_used=checked,
        wall_time=time.perf_counter() - t0,
        statement=f"generator values must match the {anum} fixture",
    )


def fetch_bfile(anum: str, timeout: float = 10.0) -> BFile:
    """Fetch b<anum>.txt over HTTP (explicitly online; never used by the
    offline default paths)."""
    import urllib.request

    if not _ANUM_RE.match(anum):
        raise ValueError(f"malformed sequence id {anum!r}")
    url = f"https://oeis.org/{anum}/b{anum[1:]}.txt"
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        return load_bfile(resp.read(), anum=anum)
