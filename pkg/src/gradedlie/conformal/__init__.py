from .fields import FieldExpr, LambdaPoly, Level, LevelError, VertexAlgebra
from .fock import FockOracle
from .sugawara import (
    ModeRelation,
    current_algebra,
    mode_bracket,
    closed_form_charges,
    sugawara,
    sugawara_fields,
    virasoro_check,
    virasoro_modes,
    xl_ope_check,
)

__all__ = [
    "FieldExpr", "LambdaPoly", "Level", "LevelError", "VertexAlgebra", "FockOracle", "ModeRelation",
    "current_algebra", "mode_bracket", "closed_form_charges", "sugawara", "sugawara_fields",
    "virasoro_check", "virasoro_modes", "xl_ope_check",
]
