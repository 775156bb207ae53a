"""Exact computations for Z2^n-graded Lie superalgebras, their affine
extensions and Sugawara-type Virasoro fields."""

from .core import (AlgebraElement, AlgebraError, AlgebraSpec, Grade, bracket, check_axioms,
                   parse_spec, serialize_spec)
from .builtins import builtin

__all__ = ["AlgebraElement", "AlgebraError", "AlgebraSpec", "Grade", "bracket", "builtin",
           "check_axioms", "parse_spec", "serialize_spec"]
