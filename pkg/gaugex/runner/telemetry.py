"""
Telemetry for gaugex runs.

Collects free-form metrics plus per-suite counts, failures and wall time
for the property suites run by ``selftest``.
"""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List

import pandas as pd


@dataclass
class SuiteStats:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class RunRecorder:
    """
    Records metrics during a run.

    Suites are opened with :meth:`suite`; each case reports through
    :meth:`case`. Free-form values go through :meth:`add`.

    Example:
        rec = RunRecorder()
        with rec.suite("bound") as s:
            rec.case(s, ok, detail="phi = ...")
    """

    metrics: Dict[str, Any] = field(default_factory=dict)
    suites: Dict[str, SuiteStats] = field(default_factory=dict)

    def add(self, **kv: Any) -> None:
        """Add metrics to the recorder, e.g. ``rec.add(seed=0, structures=100)``."""
        self.metrics.update(kv)

    @contextmanager
    def suite(self, name: str) -> Iterator[SuiteStats]:
        stats = self.suites.setdefault(name, SuiteStats(name))
        start = time.perf_counter()
        try:
            yield stats
        finally:
            stats.seconds += time.perf_counter() - start

    def case(self, stats: SuiteStats, ok: bool, detail: str = "") -> None:
        stats.cases += 1
        if not ok:
            stats.failures.append(detail)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites.values())

    def summary(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "suite": s.name,
                    "cases": s.cases,
                    "failures": len(s.failures),
                    "seconds": round(s.seconds, 3),
                    "status": "PASS" if s.passed else "FAIL",
                }
                for s in self.suites.values()
            ],
            columns=["suite", "cases", "failures", "seconds", "status"],
        )

    def as_records(self) -> List[Dict[str, Any]]:
        return self.summary().to_dict(orient="records")
