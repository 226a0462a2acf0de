"""Result record shared by the condition checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of a ``norm > tolerance`` test, kept auditable.

    Truthiness follows ``holds``; ``witness`` is the group element (or sector)
    that produced the largest norm, when the check searches over one.
    """

    holds: bool
    norm: float
    tolerance: float
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        witness = self.witness
        if isinstance(witness, tuple):
            witness = list(witness)
        return {"holds": bool(self.holds), "witness": witness, "norm": float(self.norm)}
