"""Machine-checkable verdict records shared by every certification routine."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class Certificate:
    """Outcome of a bounded check.

    A failing certificate carries a replayable ``counterexample``; a passing
    one carries a ``witness`` or, in ``notes``, the statement of the space it
    exhausted.  Payload values may be structures, embeddings or solutions;
    :meth:`to_json` serializes them.
    """

    verdict: bool
    claim: str
    witness: Optional[Dict[str, Any]] = None
    counterexample: Optional[Dict[str, Any]] = None
    stats: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.verdict

    def to_dict(self) -> Dict[str, Any]:
        from .serialize import to_jsonable

        out: Dict[str, Any] = {"claim": self.claim, "verdict": "pass" if self.verdict else "fail"}
        if self.witness is not None:
            out["witness"] = to_jsonable(self.witness)
        if self.counterexample is not None:
            out["counterexample"] = to_jsonable(self.counterexample)
        stats = {"candidates": 0, "max_size": 0, "millis": 0}
        stats.update(self.stats)
        out["stats"] = to_jsonable(stats)
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        s = f"[{'PASS' if self.verdict else 'FAIL'}] {self.claim}"
        keys = [k for k in ("candidates", "members", "spans", "max_size", "millis") if k in self.stats]
        if keys:
            s += " (" + ", ".join(f"{k}={self.stats[k]}" for k in keys) + ")"
        return s
