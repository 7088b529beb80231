"""Cutoff policies: which weights and degrees a windowed construction keeps, and why."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from ..complexes import KoszulabError, Window


class CutoffInfeasible(KoszulabError):
    pass


@dataclass(frozen=True)
class CutoffPolicy:
    """A degree window plus the weight bound that justifies it.

    ``forced`` marks a policy whose window is not backed by a degree
    estimate (used only for deliberate hypothesis violations); results
    computed under it carry the window but are flagged.
    """

    window: Window
    max_weight: Optional[int] = None
    justification: str = ""
    forced: bool = False

    @classmethod
    def for_window(cls, lo: int, hi: int, guard: int = 2, max_weight: Optional[int] = None) -> "CutoffPolicy":
        return cls(Window(lo, hi, guard), max_weight)

    @property
    def floor(self) -> int:
        """Lowest degree computed by a negatively graded construction."""
        return self.window.lo - self.window.guard

    @property
    def ceiling(self) -> int:
        """Highest degree computed by a positively graded construction."""
        return self.window.hi + self.window.guard

    def with_note(self, note: str, max_weight: Optional[int] = None) -> "CutoffPolicy":
        return replace(self, justification=note,
                       max_weight=self.max_weight if max_weight is None else max_weight)

    def force(self, max_weight: int) -> "CutoffPolicy":
        return replace(self, max_weight=max_weight, forced=True)

    def to_json(self) -> dict:
        return {"window": self.window.to_json(), "max_weight": self.max_weight,
                "justification": self.justification, "forced": self.forced}
