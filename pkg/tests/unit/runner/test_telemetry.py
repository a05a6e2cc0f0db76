"""
Tests for the run recorder.
"""

from gaugex.runner.telemetry import RunRecorder


class TestRunRecorder:
    """Recording metrics and suite outcomes."""

    def test_metrics(self):
        """Later metrics overwrite earlier ones."""
        rec = RunRecorder()
        rec.add(seed=0, structures=3)
        rec.add(structures=4)
        assert rec.metrics == {"seed": 0, "structures": 4}

    def test_suites(self):
        """Repeated suites accumulate cases and failures."""
        rec = RunRecorder()
        with rec.suite("bound") as s:
            rec.case(s, True)
            rec.case(s, False, detail="phi = 1")
        with rec.suite("bound") as s:
            rec.case(s, True)
        with rec.suite("limit") as s:
            rec.case(s, True)
        assert rec.suites["bound"].cases == 3
        assert rec.suites["bound"].failures == ["phi = 1"]
        assert not rec.passed
        frame = rec.summary()
        assert list(frame["status"]) == ["FAIL", "PASS"]
        assert rec.as_records()[1]["cases"] == 1

    def test_time_recorded_on_error(self):
        """Time is kept when a suite raises."""
        rec = RunRecorder()
        try:
            with rec.suite("boom"):
                raise KeyError("x")
        except KeyError:
            pass
        assert rec.suites["boom"].seconds >= 0
        assert rec.passed

    def test_empty(self):
        """An empty recorder passes with an empty summary."""
        rec = RunRecorder()
        assert rec.passed
        assert rec.summary().empty
