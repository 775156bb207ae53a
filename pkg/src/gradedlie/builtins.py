"""Bracket tables of the algebras shipped with the package.

Names use a trailing ``t`` for the tilde partners: ``Rt`` is R-tilde,
``at+`` is a-tilde-plus and so on.  Each relation is written once, exactly as
it is usually written ({x, y} or [x, y] with the left/right order shown); the
opposite order follows from graded skew-symmetry.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .core import AlgebraError, AlgebraSpec, build_spec, parse_spec

E, T, F, G = (0, 0), (1, 1), (0, 1), (1, 0)

_SL2_REL = [
    ("R", "L+", {"L+": 2}), ("R", "L-", {"L-": -2}), ("L+", "L-", {"R": -1}),
]

_OSP12_REL = _SL2_REL + [
    ("R", "a+", {"a+": 1}), ("R", "a-", {"a-": -1}),
    ("L+", "a-", {"a+": -1}), ("L-", "a+", {"a-": 1}),
    ("a+", "a-", {"R": 2}), ("a+", "a+", {"L+": 4}), ("a-", "a-", {"L-": 4}),
]

_G8_REL = _OSP12_REL + [
    ("R", "at+", {"at+": 1}), ("R", "at-", {"at-": -1}),
    ("Rt", "a+", {"at+": 1}), ("Rt", "a-", {"at-": -1}),
    ("Rt", "at+", {"a+": -1}), ("Rt", "at-", {"a-": 1}),
    ("a+", "at-", {"Rt": 2}), ("a-", "at+", {"Rt": 2}),
    ("at+", "at-", {"R": 2}),
    ("L+", "at-", {"at+": 1}), ("L-", "at+", {"at-": -1}),
    ("at+", "at+", {"L+": -4}), ("at-", "at-", {"L-": -4}),
]

_G10_REL = _OSP12_REL + [
    ("R", "Lt+", {"Lt+": 2}), ("R", "Lt-", {"Lt-": -2}),
    ("R", "at+", {"at+": 1}), ("R", "at-", {"at-": -1}),
    ("Rt", "L+", {"Lt+": 2}), ("Rt", "L-", {"Lt-": -2}),
    ("Rt", "Lt+", {"L+": 2}), ("Rt", "Lt-", {"L-": -2}),
    ("Rt", "a+", {"at+": 1}), ("Rt", "a-", {"at-": 1}),
    ("Rt", "at+", {"a+": 1}), ("Rt", "at-", {"a-": 1}),
    ("L+", "Lt-", {"Rt": -1}), ("L-", "Lt+", {"Rt": 1}),
    ("Lt+", "Lt-", {"R": -1}),
    ("L+", "at-", {"at+": 1}), ("L-", "at+", {"at-": -1}),
    ("Lt+", "a-", {"at+": -1}), ("Lt-", "a+", {"at-": -1}),
    ("Lt+", "at-", {"a+": 1}), ("Lt-", "at+", {"a-": 1}),
    ("a+", "at-", {"Rt": 2}), ("a-", "at+", {"Rt": -2}),
    ("at+", "at-", {"R": 2}),
    ("a+", "at+", {"Lt+": -4}), ("a-", "at-", {"Lt-": 4}),
    ("at+", "at+", {"L+": -4}), ("at-", "at-", {"L-": -4}),
]

_GENS = {
    "sl2": [("L+", E), ("R", E), ("L-", E)],
    "osp12": [("L+", E), ("R", E), ("L-", E), ("a+", F), ("a-", F)],
    "g8": [("L+", E), ("R", E), ("L-", E), ("Rt", T),
           ("a+", F), ("a-", F), ("at+", G), ("at-", G)],
    "g10": [("L+", E), ("R", E), ("L-", E), ("Lt+", T), ("Rt", T), ("Lt-", T),
            ("a+", F), ("a-", F), ("at+", G), ("at-", G)],
}

_RELATIONS = {"sl2": _SL2_REL, "osp12": _OSP12_REL, "g8": _G8_REL, "g10": _G10_REL}

NAMES = tuple(_GENS)

# Degree-(1,1) partner X -> X~ and the sign eps(X) used when quoting the
# X-L operator products of g10; eps is -1 exactly on a-, at-.
G10_TILDE = {"L+": "Lt+", "R": "Rt", "L-": "Lt-", "Lt+": "L+", "Rt": "R", "Lt-": "L-",
             "a+": "at+", "a-": "at-", "at+": "a+", "at-": "a-"}
G10_EPSILON = {n: (-1 if n in ("a-", "at-") else 1) for n in G10_TILDE}


@lru_cache(maxsize=None)
def builtin(name: str) -> AlgebraSpec:
    if name not in _GENS:
        raise AlgebraError(f"unknown builtin algebra {name!r}; choose from {', '.join(NAMES)}")
    return build_spec(name, 2, _GENS[name], _RELATIONS[name], grading_element="R")


def abelian(dim: int = 1, grades=None, name: str = "abelian") -> AlgebraSpec:
    grades = grades or [E] * dim
    return build_spec(name, len(grades[0]), [(f"x{i}", g) for i, g in enumerate(grades)], [],
                      grading_element="x0")


def data_file(name: str) -> str:
    return resources.files("gradedlie").joinpath("data", f"{name}.json").read_text(encoding="utf-8")


def load_data_file(name: str) -> AlgebraSpec:
    return parse_spec(data_file(name))
