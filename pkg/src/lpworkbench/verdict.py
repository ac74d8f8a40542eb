"""Accept/reject results with machine-readable witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verifier: ok, or a named failing clause plus a witness."""

    ok: bool
    clause: str = ""
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def accept(detail: str = "") -> Verdict:
    return Verdict(True, detail=detail)


def reject(clause: str, witness: Any = None, detail: str = "") -> Verdict:
    return Verdict(False, clause=clause, witness=witness, detail=detail)
