"""
Run configuration, telemetry, the random corpus and the selftest suites.
"""

from gaugex.runner.config import Caps, RunConfig
from gaugex.runner.selftest import SUITES, SelfTest, run_selftest
from gaugex.runner.telemetry import RunRecorder, SuiteStats

__all__ = ["Caps", "RunConfig", "RunRecorder", "SuiteStats", "SelfTest", "SUITES", "run_selftest"]
