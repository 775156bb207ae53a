"""Z2^n-graded Lie superalgebras given by structure constants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping


class AlgebraError(ValueError):
    """Malformed element or inconsistent algebra data."""


class SpecSyntaxError(AlgebraError):
    def __init__(self, msg: str, line: int = 0, column: int = 0):
        super().__init__(f"{msg} (line {line}, column {column})")
        self.line = line
        self.column = column


class SpecSemanticError(AlgebraError):
    pass


@dataclass(frozen=True, order=True)
class Grade:
    """An element of Z2^n."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if not self.bits or any(b not in (0, 1) for b in self.bits):
            raise AlgebraError(f"invalid grade {self.bits!r}")

    @classmethod
    def of(cls, *bits) -> "Grade":
        if len(bits) == 1 and not isinstance(bits[0], int):
            bits = tuple(bits[0])
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def zero(cls, n: int = 2) -> "Grade":
        return cls((0,) * n)

    @property
    def rank(self) -> int:
        return len(self.bits)

    def __add__(self, other: "Grade") -> "Grade":
        return Grade(tuple((x + y) % 2 for x, y in zip(self.bits, other.bits)))

    def dot(self, other: "Grade") -> int:
        return sum(x * y for x, y in zip(self.bits, other.bits)) % 2

    @property
    def parity(self) -> int:
        """Total parity; sign of the block in the supertrace."""
        return sum(self.bits) % 2

    def sort_key(self):
        # (0,0), (1,1), (0,1), (1,0) for n = 2: even grades first.
        return (self.parity, self.bits)

    def __str__(self):
        return "(" + ",".join(map(str, self.bits)) + ")"


def sign(a: Grade, b: Grade) -> int:
    """(-1)^{a.b}"""
    return -1 if a.dot(b) else 1


def all_grades(n: int) -> list[Grade]:
    return sorted((Grade(bits) for bits in product((0, 1), repeat=n)), key=Grade.sort_key)


@dataclass(frozen=True)
class AlgebraSpec:
    """Generators with grades plus the structure constants f^{ab}_c.

    ``structure`` only holds pairs a <= b; the other half of the table is
    fixed by graded skew-symmetry.
    """

    name: str
    rank: int
    generators: tuple[tuple[str, Grade], ...]
    structure: Mapping[tuple[int, int], Mapping[int, Fraction]]
    permutation: tuple[int, ...] | None = None
    grading_element: str | None = None
    _full: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        full = {}
        for (a, b), res in self.structure.items():
            res = {c: Fraction(v) for c, v in res.items() if v != 0}
            if not res:
                continue
            full[(a, b)] = res
            if a != b:
                s = -sign(self.grade(a), self.grade(b))
                full[(b, a)] = {c: s * v for c, v in res.items()}
        object.__setattr__(self, "_full", full)

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (self.name, self.rank, self.generators) == (other.name, other.rank, other.generators) \
            and self._full == other._full

    def __hash__(self):
        return hash((self.name, self.generators))

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.generators]

    def grade(self, a: int) -> Grade:
        return self.generators[a][1]

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.generators):
            if n == name:
                return i
        raise AlgebraError(f"unknown generator {name!r} in {self.name}")

    def f(self, a: int, b: int) -> dict[int, Fraction]:
        """{c: f^{ab}_c}"""
        return self._full.get((a, b), {})

    def coeff(self, a: int, b: int, c: int) -> Fraction:
        return self._full.get((a, b), {}).get(c, Fraction(0))

    def nonzero_pairs(self):
        return self._full.items()

    def element(self, name_or_index, coeff=1) -> "AlgebraElement":
        i = self.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return AlgebraElement.basis(self, i, coeff)

    def with_bracket(self, left: str, right: str, result: Mapping[str, Fraction | int | str]) -> "AlgebraSpec":
        """Copy with one bracket entry replaced (grading not checked)."""
        a, b = self.index(left), self.index(right)
        res = {self.index(k): Fraction(v) for k, v in result.items()}
        if a > b:
            a, b = b, a
            s = -sign(self.grade(a), self.grade(b))
            res = {c: s * v for c, v in res.items()}
        table = {k: dict(v) for k, v in self.structure.items()}
        table[(a, b)] = res
        return AlgebraSpec(self.name, self.rank, self.generators, table, self.permutation,
                           self.grading_element)


@dataclass(frozen=True)
class AlgebraElement:
    """Sparse rational combination of generators; zeros are never stored."""

    spec: AlgebraSpec = field(repr=False, compare=False)
    coeffs: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {}
        for i, v in self.coeffs.items():
            if not 0 <= i < self.spec.dim:
                raise AlgebraError(f"generator index {i} out of range for {self.spec.name}")
            v = Fraction(v)
            if v:
                clean[i] = v
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, spec, i, coeff=1):
        return cls(spec, {i: Fraction(coeff)})

    @classmethod
    def zero(cls, spec):
        return cls(spec, {})

    @property
    def grade(self) -> Grade | None:
        grades = {self.spec.grade(i) for i in self.coeffs}
        return grades.pop() if len(grades) == 1 else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for i, v in other.coeffs.items():
            out[i] = out.get(i, 0) + v
        return AlgebraElement(self.spec, out)

    def __neg__(self):
        return AlgebraElement(self.spec, {i: -v for i, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return AlgebraElement(self.spec, {i: k * v for i, v in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __str__(self):
        names = self.spec.names
        return format_terms((v, names[i]) for i, v in sorted(self.coeffs.items()))


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_terms(pairs) -> str:
    """Render (coeff, symbol) pairs as "a - 2/3 b"; an empty symbol is a scalar."""
    out = ""
    for k, (c, sym) in enumerate(pairs):
        c = Fraction(c)
        if not c:
            continue
        mag = abs(c)
        body = format_rational(mag) if not sym else (sym if mag == 1 else f"{format_rational(mag)} {sym}")
        if not out:
            out = body if c > 0 else f"-{body}"
        else:
            out += f" + {body}" if c > 0 else f" - {body}"
    return out or "0"


def bracket(spec: AlgebraSpec, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    out: dict[int, Fraction] = {}
    for a, xa in x.coeffs.items():
        for b, yb in y.coeffs.items():
            for c, v in spec.f(a, b).items():
                out[c] = out.get(c, 0) + xa * yb * v
    return AlgebraElement(spec, out)


def _basis_bracket(spec, a: int, elem: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for b, v in elem.items():
        for c, w in spec.f(a, b).items():
            out[c] = out.get(c, 0) + v * w
    return {c: v for c, v in out.items() if v}


@dataclass
class Violation:
    kind: str  # grading | skew | jacobi
    generators: tuple[str, ...]
    residual: dict[str, Fraction]

    def __str__(self):
        res = ", ".join(f"{k}: {format_rational(v)}" for k, v in self.residual.items())
        return f"{self.kind} {self.generators}: {{{res}}}"


def check_axioms(spec: AlgebraSpec) -> list[Violation]:
    """All grading, skew-symmetry and graded Jacobi violations (empty iff valid)."""
    names = spec.names
    report: list[Violation] = []
    for (a, b), res in sorted(spec.nonzero_pairs()):
        target = spec.grade(a) + spec.grade(b)
        bad = {names[c]: v for c, v in res.items() if spec.grade(c) != target}
        if bad and a <= b:
            report.append(Violation("grading", (names[a], names[b]), bad))
    for a in range(spec.dim):
        if spec.grade(a).dot(spec.grade(a)) == 0 and spec.f(a, a):
            report.append(Violation("skew", (names[a], names[a]),
                                    {names[c]: v for c, v in spec.f(a, a).items()}))
    for a, b, c in product(range(spec.dim), repeat=3):
        res = jacobi_residual(spec, a, b, c)
        if res:
            report.append(Violation("jacobi", (names[a], names[b], names[c]),
                                    {names[k]: v for k, v in sorted(res.items())}))
    return report


def jacobi_residual(spec: AlgebraSpec, a: int, b: int, c: int) -> dict[int, Fraction]:
    ga, gb, gc = spec.grade(a), spec.grade(b), spec.grade(c)
    out: dict[int, Fraction] = {}
    for s, x, y, z in ((sign(ga, gc), a, b, c), (sign(gb, ga), b, c, a), (sign(gc, gb), c, a, b)):
        for k, v in _basis_bracket(spec, x, spec.f(y, z)).items():
            out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


# -- file format ------------------------------------------------------------

def _parse_rational(text, where) -> Fraction:
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        raise SpecSemanticError(f"{where}: coefficient must be a rational literal string")
    t = text.strip()
    if "." in t or "e" in t.lower():
        raise SpecSemanticError(f"{where}: decimal literal {text!r} not allowed")
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise SpecSemanticError(f"{where}: bad rational literal {text!r}") from None


def build_spec(name: str, rank: int, generators: Iterable[tuple[str, Iterable[int]]],
               brackets: Iterable[tuple[str, str, Mapping[str, Fraction | int | str]]],
               grading_element: str | None = None, check_grading: bool = True) -> AlgebraSpec:
    """Assemble a spec from named data, sorting generators into standard grade order."""
    gens = [(n, Grade.of(*g)) for n, g in generators]
    for n, g in gens:
        if g.rank != rank:
            raise SpecSemanticError(f"generator {n!r} grade {g} has wrong length for rank {rank}")
    if len({n for n, _ in gens}) != len(gens):
        raise SpecSemanticError("duplicate generator names")
    order = sorted(range(len(gens)), key=lambda i: gens[i][1].sort_key())
    perm = tuple(order)
    sorted_gens = tuple(gens[i] for i in order)
    pos = {n: i for i, (n, _) in enumerate(sorted_gens)}
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for left, right, result in brackets:
        for n in (left, right, *result):
            if n not in pos:
                raise SpecSemanticError(f"unknown generator {n!r} in bracket [{left},{right}]")
        a, b = pos[left], pos[right]
        res = {pos[k]: _parse_rational(v, f"[{left},{right}]") for k, v in result.items()}
        res = {k: v for k, v in res.items() if v}
        if check_grading:
            target = sorted_gens[a][1] + sorted_gens[b][1]
            for c in res:
                if sorted_gens[c][1] != target:
                    raise SpecSemanticError(
                        f"[{left},{right}] -> {sorted_gens[c][0]} violates the grading")
        if a > b:
            a, b = b, a
            s = -sign(sorted_gens[a][1], sorted_gens[b][1])
            res = {c: s * v for c, v in res.items()}
        if (a, b) in table and table[(a, b)] != res:
            raise SpecSemanticError(f"inconsistent duplicate entries for [{left},{right}]")
        table[(a, b)] = res
    return AlgebraSpec(name, rank, sorted_gens, table,
                       None if perm == tuple(range(len(gens))) else perm, grading_element)


def parse_spec(text: str) -> AlgebraSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SpecSyntaxError("top level must be an object", 1, 1)
    for key in ("name", "rank", "generators"):
        if key not in doc:
            raise SpecSemanticError(f"missing key {key!r}")
    rank = doc["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise SpecSemanticError("rank must be a positive integer")
    gens = []
    for g in doc["generators"]:
        try:
            gens.append((g["name"], g["grade"]))
        except (KeyError, TypeError):
            raise SpecSemanticError(f"bad generator entry {g!r}") from None
    brackets = []
    for br in doc.get("brackets", []):
        try:
            result = {}
            for term in br["result"]:
                if term["gen"] in result:
                    raise SpecSemanticError(f"repeated generator in result of [{br['left']},{br['right']}]")
                result[term["gen"]] = term["coeff"]
            brackets.append((br["left"], br["right"], result))
        except (KeyError, TypeError):
            raise SpecSemanticError(f"bad bracket entry {br!r}") from None
    return build_spec(doc["name"], rank, gens, brackets, doc.get("grading_element"))


def serialize_spec(spec: AlgebraSpec) -> str:
    names = spec.names
    doc = {
        "name": spec.name,
        "rank": spec.rank,
        "generators": [{"name": n, "grade": list(g.bits)} for n, g in spec.generators],
        "brackets": [
            {"left": names[a], "right": names[b],
             "result": [{"gen": names[c], "coeff": format_rational(v)} for c, v in sorted(res.items())]}
            for (a, b), res in sorted(spec.structure.items()) if any(res.values())
        ],
    }
    if spec.grading_element:
        doc["grading_element"] = spec.grading_element
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
