"""
Exception hierarchy for gaugex.

Property failures (a structure violating a metric axiom, a nonzero theory
defect) are reported as data. The classes here signal input that cannot be
processed at all.
"""

from typing import List, Optional, Sequence


class GaugexError(RuntimeError):
    """Base class for all gaugex errors."""


class ModulusError(GaugexError, ValueError):
    """Bad argument to the modulus calculus."""


class ParseError(GaugexError, ValueError):
    """Malformed s-expression input."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


class SignatureError(GaugexError, ValueError):
    """Inconsistent signature declaration."""


class ArityError(SignatureError):
    """Symbol applied to the wrong number of arguments."""


class UnknownSymbolError(SignatureError):
    """Symbol not declared in the signature."""


class IllFormedFormulaError(GaugexError, ValueError):
    """A quantifier body is not eventually constant in its bound variable."""

    def __init__(self, message: str, diagnostics: Sequence[str] = ()):
        self.diagnostics: List[str] = list(diagnostics)
        if self.diagnostics:
            message = message + ": " + "; ".join(self.diagnostics)
        super().__init__(message)


class UnboundedFormulaError(GaugexError, ValueError):
    """A bound was requested for a formula that is not syntactically bounded."""


class NotEventuallyConstantError(GaugexError, ValueError):
    """A threshold or limit was requested in a variable without eventual constancy."""


class StructureError(GaugexError, ValueError):
    """Structure tables are incomplete or inconsistent with the signature."""


class UnassignedVariableError(StructureError):
    """A free variable has no point assigned."""


class WindowError(GaugexError, ValueError):
    """Restricted-quantifier radii out of order."""


class EmboundmentError(GaugexError, ValueError):
    """Input cannot be embounded or recovered."""


class TheoryError(GaugexError, ValueError):
    """Theory file or theory/structure mismatch."""


class CapExceededError(GaugexError, ValueError):
    """A construction would exceed a configured size cap."""


class ConfigKeyError(GaugexError, KeyError):
    """Unknown configuration key."""


class BanachMazurError(GaugexError, ValueError):
    """Failure in the finite-dimensional normed-space routines."""


class SingularMapError(BanachMazurError):
    """Linear map is not invertible within tolerance."""


class DependentVectorsError(BanachMazurError):
    """Vectors are linearly dependent (minimal simplex norm is 0)."""
