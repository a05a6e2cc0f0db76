"""
Core values: errors, extended rationals, continuity moduli and check reports.
"""

from gaugex.core.errors import (
    ArityError,
    BanachMazurError,
    CapExceededError,
    ConfigKeyError,
    DependentVectorsError,
    EmboundmentError,
    GaugexError,
    IllFormedFormulaError,
    ModulusError,
    NotEventuallyConstantError,
    ParseError,
    SignatureError,
    SingularMapError,
    StructureError,
    TheoryError,
    UnassignedVariableError,
    UnboundedFormulaError,
    UnknownSymbolError,
    WindowError,
)
from gaugex.core.extended import INF, ExtendedValue, as_fraction, format_value, parse_value, reciprocal
from gaugex.core.modulus import (
    IDENTITY,
    ClampTo,
    Compose,
    Constant,
    ContinuityModulus,
    FiniteMap,
    Identity,
    Min,
    Scale,
    StandardArity,
    compose_modulus,
    eval_modulus,
    normalize,
    pair_modulus,
    parse_modulus,
    quantifier_modulus,
    respects_check,
    respects_check_grid,
    standard_modulus,
    sup_modulus,
)
from gaugex.core.report import CheckReport, Violation

__all__ = [
    # errors
    "GaugexError", "ModulusError", "ParseError", "SignatureError", "ArityError",
    "UnknownSymbolError", "IllFormedFormulaError", "UnboundedFormulaError",
    "NotEventuallyConstantError", "StructureError", "UnassignedVariableError", "WindowError",
    "EmboundmentError", "TheoryError", "CapExceededError", "ConfigKeyError", "BanachMazurError",
    "SingularMapError", "DependentVectorsError",
    # values
    "INF", "ExtendedValue", "as_fraction", "format_value", "parse_value", "reciprocal",
    # moduli
    "ContinuityModulus", "Identity", "IDENTITY", "Constant", "Scale", "Min", "Compose", "ClampTo",
    "StandardArity", "standard_modulus", "eval_modulus", "sup_modulus", "normalize",
    "pair_modulus", "compose_modulus", "quantifier_modulus", "parse_modulus", "FiniteMap",
    "respects_check", "respects_check_grid",
    # reports
    "CheckReport", "Violation",
]
