"""Shared report containers and deterministic JSON serialization.

Every harness in the package reports results through small dataclasses that
serialize to the same JSON-shaped schema.  Serialization is deterministic:
sorted keys, repr floats, no timestamps, so identical runs produce identical
bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, is_dataclass
from typing import Any

import numpy as np


@dataclass
class AxiomCheck:
    """Outcome of one axiom sweep: pass flag plus the first counterexample."""

    name: str
    passed: bool
    counterexample: dict | None = None


@dataclass
class AxiomReport:
    """Bundle of axiom checks for one subject (a t-norm or a fuzzy metric)."""

    subject: str
    samples: int
    seed: int
    checks: tuple[AxiomCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "samples": self.samples,
            "seed": self.seed,
            "all_passed": self.all_passed,
            "checks": [asdict(c) for c in self.checks],
        }


def to_jsonable(obj: Any) -> Any:
    """Recursively convert numpy scalars/arrays and dataclasses to JSON types."""
    if is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return to_jsonable(obj.to_dict())
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def json_text(payload: dict) -> str:
    """Render a payload as canonical JSON text (sorted keys, trailing newline)."""
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2) + "\n"
