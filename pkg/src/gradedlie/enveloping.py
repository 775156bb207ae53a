"""PBW rewriting in the universal enveloping algebra.

A monomial is a non-decreasing tuple of generator indices.  Out-of-order
neighbours are swapped with X^a X^b = (-1)^{a.b} X^b X^a + [X^a, X^b]; a
repeated generator with a.a = 1 squares to half its self-bracket, which keeps
the normal form unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .core import AlgebraSpec, Grade, format_terms, sign
from .forms import BilinearForm, DegenerateFormError

MAX_WORD = 4


class WordTooLongError(ValueError):
    pass


@dataclass(frozen=True)
class UEAElement:
    spec: AlgebraSpec = field(repr=False, compare=False)
    terms: Mapping[tuple[int, ...], Fraction]

    def __post_init__(self):
        object.__setattr__(self, "terms", {m: Fraction(v) for m, v in self.terms.items() if v})

    @classmethod
    def one(cls, spec):
        return cls(spec, {(): Fraction(1)})

    @classmethod
    def generator(cls, spec, a):
        if isinstance(a, str):
            a = spec.index(a)
        return cls(spec, {(a,): Fraction(1)})

    @property
    def degree(self) -> Grade | None:
        grades = set()
        for m in self.terms:
            g = Grade.zero(self.spec.rank)
            for a in m:
                g = g + self.spec.grade(a)
            grades.add(g)
        return grades.pop() if len(grades) == 1 else None

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, v in other.terms.items():
            out[m] = out.get(m, 0) + v
        return UEAElement(self.spec, out)

    def __neg__(self):
        return UEAElement(self.spec, {m: -v for m, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return UEAElement(self.spec, {m: k * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return uea_multiply(self.spec, self, other)
        return other * self

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self):
        names = self.spec.names
        return format_terms((v, " ".join(names[a] for a in m))
                            for m, v in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))


def _normal_form(spec: AlgebraSpec, word: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    return _cached_normal_form(spec)(word)


@lru_cache(maxsize=32)
def _cached_normal_form(spec: AlgebraSpec):
    @lru_cache(maxsize=None)
    def nf(word):
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b or (a == b and spec.grade(a).dot(spec.grade(a))):
                break
        else:
            return {word: Fraction(1)}
        out: dict[tuple[int, ...], Fraction] = {}

        def add(w, k):
            for m, v in nf(w).items():
                out[m] = out.get(m, 0) + k * v

        head, tail = word[:i], word[i + 2:]
        if a == b:
            # X X = 1/2 [X, X] when a.a = 1
            for c, v in spec.f(a, a).items():
                add(head + (c,) + tail, v / 2)
        else:
            add(head + (b, a) + tail, sign(spec.grade(a), spec.grade(b)))
            for c, v in spec.f(a, b).items():
                add(head + (c,) + tail, v)
        return {m: v for m, v in out.items() if v}

    return nf


def uea_multiply(spec: AlgebraSpec, u: UEAElement, v: UEAElement) -> UEAElement:
    out: dict[tuple[int, ...], Fraction] = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            if len(m1) + len(m2) > MAX_WORD:
                raise WordTooLongError(f"words longer than {MAX_WORD} are not supported")
            for m, c in _normal_form(spec, m1 + m2).items():
                out[m] = out.get(m, 0) + c1 * c2 * c
    return UEAElement(spec, out)


def from_word(spec: AlgebraSpec, names, coeff=1) -> UEAElement:
    """Normal form of a product of named generators."""
    word = tuple(spec.index(n) if isinstance(n, str) else n for n in names)
    if len(word) > MAX_WORD:
        raise WordTooLongError(f"words longer than {MAX_WORD} are not supported")
    return Fraction(coeff) * UEAElement(spec, _normal_form(spec, word))


def _split_homogeneous(spec, u: UEAElement):
    parts: dict[Grade, dict] = {}
    for m, v in u.terms.items():
        g = Grade.zero(spec.rank)
        for a in m:
            g = g + spec.grade(a)
        parts.setdefault(g, {})[m] = v
    return parts


def uea_bracket(spec: AlgebraSpec, x: int | str, u: UEAElement) -> UEAElement:
    """[X, u] = X u - (-1)^{x.u} u X, extended linearly over homogeneous parts."""
    if isinstance(x, str):
        x = spec.index(x)
    X = UEAElement.generator(spec, x)
    out = UEAElement(spec, {})
    for g, terms in _split_homogeneous(spec, u).items():
        part = UEAElement(spec, terms)
        out = out + uea_multiply(spec, X, part) - sign(spec.grade(x), g) * uea_multiply(spec, part, X)
    return out


def casimir(spec: AlgebraSpec, form: BilinearForm) -> UEAElement:
    """C = sum_{a,b} eta_{ab} X^a X^b in PBW form."""
    if form.inverse is None:
        raise DegenerateFormError("casimir needs a form with its inverse")
    out: dict[tuple[int, ...], Fraction] = {}
    for a in range(spec.dim):
        for b in range(spec.dim):
            w = form.inverse[a][b]
            if w:
                for m, v in _normal_form(spec, (a, b)).items():
                    out[m] = out.get(m, 0) + w * v
    return UEAElement(spec, out)


def check_casimir_central(spec: AlgebraSpec, c: UEAElement) -> dict[str, UEAElement]:
    """Generators whose bracket with c is nonzero, with the residual."""
    report = {}
    for a in range(spec.dim):
        r = uea_bracket(spec, a, c)
        if not r.is_zero():
            report[spec.names[a]] = r
    return report


def grouped_presentation(spec: AlgebraSpec, form: BilinearForm) -> str:
    """sum eta_{ab} X^a X^b regrouped as squares, {x,y} = xy + yx and [x,y] = xy - yx.

    These are plain (anti)commutators in the enveloping algebra, independent
    of the sign rule.
    """
    names = spec.names
    inv = form.inverse
    parts = []
    for a in range(spec.dim):
        if inv[a][a]:
            parts.append((inv[a][a], f"{names[a]}^2"))
        for b in range(a + 1, spec.dim):
            x, y = inv[a][b], inv[b][a]
            if not (x or y):
                continue
            if x == y:
                parts.append((x, f"{{{names[a]},{names[b]}}}"))
            elif x == -y:
                parts.append((x, f"[{names[a]},{names[b]}]"))
            else:
                parts.append((x, f"{names[a]} {names[b]}"))
                parts.append((y, f"{names[b]} {names[a]}"))
    return format_terms(parts)
