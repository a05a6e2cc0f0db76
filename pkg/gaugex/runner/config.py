"""
Run configuration assembled from the shipped defaults, an optional user
YAML file, the environment and command-line arguments.
"""

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from gaugex.core.errors import CapExceededError, ConfigKeyError, GaugexError
from gaugex.core.extended import as_fraction
from gaugex.io.yaml_loader import load_merged

logger = logging.getLogger(__name__)

CAP_ENV = "GAUGE_LOGIC_CAP"

HUMAN = "human"
JSON = "json"
FORMATS = (HUMAN, JSON)


@dataclass(frozen=True)
class Caps:
    measure_algebra_atoms: int = 4
    sampled_points: int = 125
    simplex_vectors: int = 6
    structure_points: int = 64

    @classmethod
    def from_mapping(cls, values: Dict[str, Any], env: Optional[str] = None) -> "Caps":
        """Caps from ``values``; a non-empty ``env`` integer replaces every cap."""
        unknown = set(values) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigKeyError(f"unknown cap(s): {sorted(unknown)}")
        if env:
            try:
                cap = int(env)
            except ValueError:
                raise GaugexError(f"{CAP_ENV} must be an integer, got '{env}'") from None
            if cap < 1:
                raise GaugexError(f"{CAP_ENV} must be positive, got {cap}")
            logger.debug("%s=%d overrides every size cap", CAP_ENV, cap)
            return cls(cap, cap, cap, cap)
        return cls(**{k: int(v) for k, v in values.items()})

    def check_points(self, count: int, what: str = "structure") -> None:
        if count > self.structure_points:
            raise CapExceededError(f"{what} has {count} points, above the cap of {self.structure_points}")


def _fractions(values: Sequence, what: str) -> List[Fraction]:
    try:
        out = [as_fraction(v) for v in values]
    except (TypeError, ValueError, ZeroDivisionError):
        raise GaugexError(f"{what} must be rationals, got {list(values)}") from None
    if any(v <= 0 for v in out):
        raise GaugexError(f"{what} must be positive, got {[str(v) for v in out]}")
    return out


def _split(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [t for t in text.replace(",", " ").split() if t]


@dataclass
class RunConfig:
    """Everything a CLI handler needs.

    Attributes:
        command: Subcommand name.
        inputs: Input files, checked to exist.
        output: Optional output path.
        eps: Epsilon list for scheme instances.
        n: Radius list for schemes with radius ``n``.
        caps: Size caps.
        fmt: ``human`` or ``json``.
        settings: The full merged configuration mapping.
    """

    command: str
    inputs: List[Path] = field(default_factory=list)
    output: Optional[Path] = None
    eps: List[Fraction] = field(default_factory=lambda: [Fraction(1), Fraction(1, 2), Fraction(1, 4)])
    n: List[Fraction] = field(default_factory=lambda: [Fraction(1), Fraction(2)])
    caps: Caps = field(default_factory=Caps)
    fmt: str = HUMAN
    settings: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise GaugexError(f"output format must be one of {FORMATS}, got '{self.fmt}'")
        for path in self.inputs:
            if not path.exists():
                raise FileNotFoundError(f"Input file not found: {path}")

    def section(self, name: str) -> Dict[str, Any]:
        return dict(self.settings.get(name, {}))

    @property
    def tol(self) -> float:
        return float(self.section("banach").get("tol", 1e-9))

    @classmethod
    def build(
        cls,
        command: str,
        inputs: Sequence = (),
        output=None,
        config_file=None,
        eps: Optional[str] = None,
        n: Optional[str] = None,
        fmt: Optional[str] = None,
        environ: Optional[Dict[str, str]] = None,
    ) -> "RunConfig":
        """Merge defaults, ``config_file`` and explicit arguments.

        ``eps`` and ``n`` are comma or space separated lists of rationals;
        ``None`` keeps the configured lists.
        """
        environ = os.environ if environ is None else environ
        settings = load_merged(config_file)
        theory = settings.get("theory", {})
        eps_list = _fractions(_split(eps) or theory.get("eps", []), "epsilon values")
        n_list = _fractions(_split(n) or theory.get("n", []), "n values")
        caps = Caps.from_mapping(settings.get("caps", {}), environ.get(CAP_ENV))
        return cls(
            command=command,
            inputs=[Path(p).expanduser() for p in inputs if p is not None],
            output=Path(output).expanduser() if output else None,
            eps=eps_list,
            n=n_list,
            caps=caps,
            fmt=fmt or settings.get("output", {}).get("format", HUMAN),
            settings=settings,
        )
