"""
Check reports shared by modulus checks, structure validation and the
emboundment comparison lemmas.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd


@dataclass(frozen=True)
class Violation:
    """One failed check with its witnesses.

    Args:
        check: Short name of the property, e.g. ``"triangle"`` or ``"gauge-clause"``.
        witness: Points, tuples or indices exhibiting the failure.
        detail: Human-readable explanation.
        epsilon: Witnessing epsilon for modulus checks.
    """

    check: str
    witness: Tuple[Any, ...]
    detail: str
    epsilon: Optional[Any] = None


@dataclass
class CheckReport:
    """Outcome of an exhaustive check: ``passed`` plus every violation found."""

    subject: str = ""
    violations: List[Violation] = field(default_factory=list)
    checked: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, violation: Violation) -> None:
        self.violations.append(violation)

    def count(self, check: str, n: int = 1) -> None:
        self.checked[check] = self.checked.get(check, 0) + n

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.violations.extend(other.violations)
        for key, n in other.checked.items():
            self.count(key, n)
        return self

    def first(self, check: Optional[str] = None) -> Optional[Violation]:
        for v in self.violations:
            if check is None or v.check == check:
                return v
        return None

    def to_frame(self) -> pd.DataFrame:
        from gaugex.core.extended import format_value

        rows = [
            {
                "check": v.check,
                "witness": " ".join(str(w) for w in v.witness),
                "epsilon": None if v.epsilon is None else format_value(v.epsilon),
                "detail": v.detail,
            }
            for v in self.violations
        ]
        return pd.DataFrame(rows, columns=["check", "witness", "epsilon", "detail"])

    def __str__(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.violations)} violations)"
        return f"{self.subject or 'check'}: {status}"
