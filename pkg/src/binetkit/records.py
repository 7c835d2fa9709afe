"""Verification outcome types shared by the exact and series engines."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

__all__ = ["Status", "VerificationRecord"]


class Status(enum.Enum):
    VERIFIED_EXACT = "VERIFIED_EXACT"
    VERIFIED_NUMERIC = "VERIFIED_NUMERIC"
    REFUTED = "REFUTED"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:  # keeps report rendering compact
        return self.value


@dataclass(frozen=True)
class VerificationRecord:
    """Outcome of checking one identity at one parameter point.

    ``lhs``/``rhs`` are decimal or exact-rational renderings; for series
    checks they carry the enclosure radii.  ``statement`` restates the
    identity being checked so reports are self-describing.
    """

    id: str
    params: Mapping[str, Any]
    status: Status
    lhs: str
    rhs: str
    gap: Optional[str] = None
    tol: Optional[str] = None
    prec: Optional[int] = None
    terms_used: Optional[int] = None
    wall_time: Optional[float] = None
    statement: str = ""
    detail: str = field(default="")

    def sort_key(self) -> tuple:
        return (self.id, tuple(sorted((str(k), str(v)) for k, v in self.params.items())))

    def as_dict(self, *, reproducible: bool = True) -> dict:
        """Field dict in stable order; ``reproducible`` nulls wall_time so
        identical runs serialize to identical bytes."""
        return {
            "id": self.id,
            "params": {str(k): str(v) for k, v in sorted(self.params.items())},
            "status": self.status.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "tol": self.tol,
            "prec": self.prec,
            "terms_used": self.terms_used,
            "wall_time": None if reproducible else self.wall_time,
            "statement": self.statement,
            "detail": self.detail,
        }
