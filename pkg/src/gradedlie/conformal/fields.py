"""Lambda-bracket calculus for the current algebra of an affine extension.

A field is a rational combination of canonical words.  A word is a tuple of
letters ``(d, a)`` read as the right-nested normal product

    :∂^(d1) X^a1 :∂^(d2) X^a2 : ... ::,     ∂^(d) = ∂^d / d!

with letters sorted ascending and no repeated letter whose generator has
a.a = 1.  The empty word is the unit field.  A letter ``(-1, i)`` stands for
the i-th graded central element kept as a formal symbol: it is ∂-flat, has
zero lambda-bracket with everything, and sorts to the front of every word, so
the sign rule moves it past fields automatically.  Only central elements of
nonzero degree are kept formal; even ones are replaced by their level.  Out-of-order products are
rewritten with quasi-commutativity, left-nested ones with quasi-associativity,
and lambda-brackets with composite fields through the non-commutative Wick
formulas.

Lambda polynomials are stored in divided powers: ``poly[j]`` is the
coefficient of λ^j / j!, i.e. the j-th product a_(j) b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from ..core import AlgebraSpec, Grade, format_terms, sign

Letter = tuple[int, int]  # (divided derivative order, generator index)
Word = tuple[Letter, ...]


class LevelError(ValueError):
    pass


class FieldExpr:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        self.terms = {w: Fraction(v) for w, v in (terms or {}).items() if v}

    @classmethod
    def unit(cls, coeff=1):
        return cls({(): coeff})

    @classmethod
    def generator(cls, a: int, d: int = 0, coeff=1):
        return cls({((d, a),): coeff})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, v in other.terms.items():
            out[w] = out.get(w, 0) + v
        return FieldExpr(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, k):
        k = Fraction(k)
        return FieldExpr({w: k * v for w, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, FieldExpr):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"FieldExpr({self.terms!r})"

    def unit_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def format(self, spec: AlgebraSpec, central_names=None) -> str:
        return format_terms((v, format_word(spec, w, central_names) if w else "")
                            for w, v in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))


def format_letter(spec, letter: Letter, central_names=None) -> str:
    d, a = letter
    if d < 0:
        return central_names[a] if central_names else f"c{a}"
    name = spec.names[a]
    if d == 0:
        return name
    return f"∂{name}" if d == 1 else f"∂^({d}){name}"


def format_word(spec, word: Word, central_names=None) -> str:
    if not word:
        return "1"
    if len(word) == 1:
        return format_letter(spec, word[0], central_names)
    return ":" + " ".join(format_letter(spec, l, central_names) for l in word) + ":"


class LambdaPoly:
    """Finitely supported map j -> a_(j)b."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, FieldExpr] | None = None):
        self.coeffs = {j: f for j, f in (coeffs or {}).items() if not f.is_zero()}

    def __add__(self, other):
        out = dict(self.coeffs)
        for j, f in other.coeffs.items():
            out[j] = out[j] + f if j in out else f
        return LambdaPoly(out)

    def __rmul__(self, k):
        return LambdaPoly({j: k * f for j, f in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-1) * other

    def __eq__(self, other):
        if isinstance(other, LambdaPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __getitem__(self, j) -> FieldExpr:
        return self.coeffs.get(j, FieldExpr())

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def format(self, spec, var="λ", central_names=None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j in sorted(self.coeffs):
            mult = "" if j == 0 else (f"{var} " if j == 1 else f"{var}^{j}/{j}! ")
            parts.append(f"{mult}({self.coeffs[j].format(spec, central_names)})")
        return " + ".join(parts)


@dataclass(frozen=True)
class Level:
    """Scalar values of the central elements, keyed by central label."""

    k00: Fraction
    k11: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "k00", Fraction(self.k00))
        if self.k11 is not None:
            object.__setattr__(self, "k11", Fraction(self.k11))
        if 2 * self.k00 + 1 == 0:
            raise LevelError("2 k00 + 1 = 0: Sugawara prefactor undefined")

    @classmethod
    def parse(cls, text: str) -> "Level":
        parts = [p.strip() for p in text.split(",")]
        if not 1 <= len(parts) <= 2:
            raise LevelError(f"bad level {text!r}")
        try:
            vals = [Fraction(p) for p in parts]
        except (ValueError, ZeroDivisionError):
            raise LevelError(f"bad level {text!r}") from None
        return cls(vals[0], vals[1] if len(vals) > 1 else None)

    def values(self) -> dict[str, Fraction]:
        out = {"w00": self.k00}
        if self.k11 is not None:
            out["w11"] = self.k11
        return out

    @property
    def lambda11(self) -> Fraction:
        return 2 * (self.k11 or 0) / (2 * self.k00 + 1)


def divided_derivative(f: FieldExpr, k: int, va: "VertexAlgebra") -> FieldExpr:
    out = f
    for i in range(1, k + 1):
        out = Fraction(1, i) * va.derivative(out)
    return out


class VertexAlgebra:
    """Current algebra [X^a_λ X^b] = f^{ab}_c X^c + λ K^{ab} at fixed level.

    ``pairing[a][b]`` is the scalar part of K^{ab}.  Each entry of
    ``formal`` is ``(name, degree, matrix)`` and adds ``matrix[a][b]`` times
    the formal central letter of that degree to K^{ab}.
    """

    def __init__(self, spec: AlgebraSpec, pairing, formal=()):
        self.spec = spec
        self.pairing = tuple(tuple(Fraction(x) for x in row) for row in pairing)
        self.formal = tuple((name, deg, tuple(tuple(Fraction(x) for x in row) for row in m))
                            for name, deg, m in formal)
        self.central_names = [name for name, _, _ in self.formal]
        self._nprod_cache: dict = {}
        self._lb_cache: dict = {}
        self._deriv_cache: dict = {}

    @classmethod
    def from_extension(cls, ext, level: Level, formal: bool = True) -> "VertexAlgebra":
        """Evaluate the even central elements at ``level``.

        With ``formal`` set, central elements of nonzero degree stay symbolic
        so that their grade enters every sign; use :meth:`evaluate` to
        substitute their level afterwards.
        """
        vals = level.values()
        r = ext.spec.dim
        K = [[Fraction(0)] * r for _ in range(r)]
        formal_terms = []
        for c in ext.centrals:
            mat = [[c.K(a, b) for b in range(r)] for a in range(r)]
            if formal and c.degree != Grade.zero(ext.spec.rank):
                formal_terms.append((c.label, c.degree, mat))
                continue
            k = vals.get(c.label)
            if k is None:
                if any(any(row) for row in mat):
                    raise LevelError(f"no level given for central element {c.label}")
                continue
            for a in range(r):
                for b in range(r):
                    K[a][b] += k * mat[a][b]
        va = cls(ext.spec, K, formal_terms)
        va.level = level
        return va

    def central(self, name: str, coeff=1) -> FieldExpr:
        return FieldExpr({((-1, self.central_names.index(name)),): coeff})

    def evaluate(self, f: FieldExpr, values: Mapping[str, Fraction] | None = None) -> FieldExpr:
        """Substitute scalar values for the formal central letters.

        They always sit at the front of a canonical word, so no sign arises.
        """
        values = values if values is not None else self.level.values()
        out: dict[Word, Fraction] = {}
        for w, v in f.terms.items():
            k = 0
            while k < len(w) and w[k][0] < 0:
                name = self.central_names[w[k][1]]
                if name not in values:
                    raise LevelError(f"no level given for central element {name}")
                v = v * values[name]
                k += 1
            out[w[k:]] = out.get(w[k:], 0) + v
        return FieldExpr(out)

    def evaluate_poly(self, p: LambdaPoly, values=None) -> LambdaPoly:
        return LambdaPoly({j: self.evaluate(c, values) for j, c in p.coeffs.items()})

    # -- grading helpers --------------------------------------------------

    def letter_grade(self, letter: Letter) -> Grade:
        if letter[0] < 0:
            return self.formal[letter[1]][1]
        return self.spec.grade(letter[1])

    def word_grade(self, word: Word) -> Grade:
        g = Grade.zero(self.spec.rank)
        for l in word:
            g = g + self.letter_grade(l)
        return g

    def field_grade(self, f: FieldExpr) -> Grade | None:
        grades = {self.word_grade(w) for w in f.terms}
        return grades.pop() if len(grades) == 1 else None

    def eps(self, x: Grade, y: Grade) -> int:
        return sign(x, y)

    @staticmethod
    def weight(word: Word) -> int:
        return sum(d + 1 for d, _ in word)

    def _self_odd(self, letter: Letter) -> bool:
        g = self.letter_grade(letter)
        return g.dot(g) == 1

    # -- derivative ---------------------------------------------------------

    def derivative(self, f: FieldExpr) -> FieldExpr:
        out = FieldExpr()
        for w, v in f.terms.items():
            out = out + v * self._derivative_word(w)
        return out

    def _derivative_word(self, word: Word) -> FieldExpr:
        if word in self._deriv_cache:
            return self._deriv_cache[word]
        if not word:
            res = FieldExpr()
        else:
            (d, a), rest = word[0], word[1:]
            # ∂ :l R: = :(∂l) R: + :l (∂R):
            res = self._nprod_letter((d, a), self._derivative_word(rest))
            if d >= 0:
                res = res + (d + 1) * self._nprod_letter((d + 1, a), FieldExpr({rest: 1}))
        self._deriv_cache[word] = res
        return res

    # -- normal products -------------------------------------------------

    def normal_product(self, a: FieldExpr, b: FieldExpr) -> FieldExpr:
        out = FieldExpr()
        for wa, va in a.terms.items():
            for wb, vb in b.terms.items():
                out = out + (va * vb) * self._nprod_words(wa, wb)
        return out

    def _nprod_words(self, wa: Word, wb: Word) -> FieldExpr:
        key = (wa, wb)
        if key in self._nprod_cache:
            return self._nprod_cache[key]
        if not wa:
            res = FieldExpr({wb: 1})
        elif len(wa) == 1:
            res = self._nprod_letter(wa[0], FieldExpr({wb: 1}))
        else:
            # ::l R: B: = :l :R B:: + :(∫_0^∂ l)[R_λ B]: + ε(l,R) :(∫_0^∂ R)[l_λ B]:
            l, rest = wa[0], wa[1:]
            lf, rf, bf = FieldExpr({(l,): 1}), FieldExpr({rest: 1}), FieldExpr({wb: 1})
            res = self._nprod_letter(l, self._nprod_words(rest, wb))
            for j, c in self.lambda_bracket(rf, bf).coeffs.items():
                res = res + self.normal_product(divided_derivative(lf, j + 1, self), c)
            e = self.eps(self.letter_grade(l), self.word_grade(rest))
            for j, c in self.lambda_bracket(lf, bf).coeffs.items():
                res = res + e * self.normal_product(divided_derivative(rf, j + 1, self), c)
        self._nprod_cache[key] = res
        return res

    def _nprod_letter(self, l: Letter, f: FieldExpr) -> FieldExpr:
        out = FieldExpr()
        for w, v in f.terms.items():
            out = out + v * self._insert(l, w)
        return out

    def _insert(self, l: Letter, word: Word) -> FieldExpr:
        key = ((l,), word, "ins")
        if key in self._nprod_cache:
            return self._nprod_cache[key]
        if not word or l < word[0]:
            res = FieldExpr({(l,) + word: 1})
        elif l == word[0] and not self._self_odd(l):
            res = FieldExpr({(l,) + word: 1})
        else:
            w0, rest = word[0], word[1:]
            restf = FieldExpr({rest: 1})
            corr = self._reorder_correction(l, w0)
            if l == w0:
                # :l:l C:: = 1/2 :(∫_{-∂}^0 [l_λ l]) C: when ε(l,l) = -1
                res = Fraction(1, 2) * self.normal_product(corr, restf)
            else:
                e = self.eps(self.letter_grade(l), self.letter_grade(w0))
                res = e * self._nprod_letter(w0, self._nprod_letter(l, restf))
                res = res + self.normal_product(corr, restf)
        self._nprod_cache[key] = res
        return res

    def _reorder_correction(self, x: Letter, y: Letter) -> FieldExpr:
        """∫_{-∂}^0 [x_λ y] dλ = sum_j (-1)^j ∂^(j+1) (x_(j) y)"""
        out = FieldExpr()
        for j, c in self._lb_letters(x, y).coeffs.items():
            out = out + (-1) ** j * divided_derivative(c, j + 1, self)
        return out

    # -- lambda brackets -------------------------------------------------

    def lambda_bracket(self, a: FieldExpr, b: FieldExpr) -> LambdaPoly:
        out = LambdaPoly()
        for wa, va in a.terms.items():
            for wb, vb in b.terms.items():
                out = out + (va * vb) * self._lb_words(wa, wb)
        return out

    def _lb_words(self, wa: Word, wb: Word) -> LambdaPoly:
        key = (wa, wb)
        if key in self._lb_cache:
            return self._lb_cache[key]
        if not wa or not wb:
            res = LambdaPoly()
        elif len(wa) == 1 and len(wb) == 1:
            res = self._lb_letters(wa[0], wb[0])
        elif len(wa) == 1:
            res = self._wick_right(wa[0], wb[0], wb[1:])
        else:
            res = self._wick_left(wa[0], wa[1:], wb)
        self._lb_cache[key] = res
        return res

    def _lb_letters(self, x: Letter, y: Letter) -> LambdaPoly:
        """[∂^(d) X^a _λ ∂^(e) X^b] = (-λ)^d/d! (λ+∂)^e/e! (f^{ab}_c X^c + λ K^{ab})"""
        key = ((x,), (y,))
        if key in self._lb_cache:
            return self._lb_cache[key]
        if x[0] < 0 or y[0] < 0:
            self._lb_cache[key] = LambdaPoly()
            return self._lb_cache[key]
        (d, a), (e, b) = x, y
        base = {}
        lin = FieldExpr({((0, c),): v for c, v in self.spec.f(a, b).items()})
        if not lin.is_zero():
            base[0] = lin
        cent = {(): self.pairing[a][b]}
        for i, (_, _, m) in enumerate(self.formal):
            cent[((-1, i),)] = m[a][b]
        cent = FieldExpr(cent)
        if not cent.is_zero():
            base[1] = cent
        poly = LambdaPoly(base)
        # (λ+∂)^e / e! = sum_i λ^(i) ∂^(e-i)
        shifted = LambdaPoly()
        for i in range(e + 1):
            for j, c in poly.coeffs.items():
                shifted = shifted + LambdaPoly({i + j: comb(i + j, i) * divided_derivative(c, e - i, self)})
        # (-λ)^d / d! = (-1)^d λ^(d)
        res = LambdaPoly({j + d: (-1) ** d * comb(j + d, d) * c for j, c in shifted.coeffs.items()})
        self._lb_cache[key] = res
        return res

    def _wick_right(self, a: Letter, b: Letter, rest: Word) -> LambdaPoly:
        """[a_λ :b C:] = :[a_λ b] C: + ε(a,b) :b [a_λ C]: + ∫_0^λ [[a_λ b]_μ C] dμ"""
        cf = FieldExpr({rest: 1})
        af = FieldExpr({(a,): 1})
        ab = self._lb_letters(a, b)
        out = LambdaPoly()
        for j, p in ab.coeffs.items():
            out = out + LambdaPoly({j: self.normal_product(p, cf)})
        e = self.eps(self.letter_grade(a), self.letter_grade(b))
        for j, q in self.lambda_bracket(af, cf).coeffs.items():
            out = out + LambdaPoly({j: e * self._nprod_letter(b, q)})
        for j, p in ab.coeffs.items():
            for i, r in self.lambda_bracket(p, cf).coeffs.items():
                out = out + LambdaPoly({i + j + 1: comb(i + j + 1, j) * r})
        return out

    def _wick_left(self, a: Letter, rest: Word, bword: Word) -> LambdaPoly:
        """[:a R:_λ B] = :(e^{∂ d/dλ} a)[R_λ B]: + ε(a,R) :(e^{∂ d/dλ} R)[a_λ B]:
        + ε(a,R) ∫_0^λ [R_μ [a_{λ-μ} B]] dμ"""
        af = FieldExpr({(a,): 1})
        rf = FieldExpr({rest: 1})
        bf = FieldExpr({bword: 1})
        e = self.eps(self.letter_grade(a), self.word_grade(rest))
        out = LambdaPoly()
        for j, s in self.lambda_bracket(rf, bf).coeffs.items():
            for i in range(j + 1):
                out = out + LambdaPoly({j - i: self.normal_product(divided_derivative(af, i, self), s)})
        ab = self.lambda_bracket(af, bf)
        for j, t in ab.coeffs.items():
            for i in range(j + 1):
                out = out + LambdaPoly({j - i: e * self.normal_product(divided_derivative(rf, i, self), t)})
        for j, t in ab.coeffs.items():
            for i, u in self.lambda_bracket(rf, t).coeffs.items():
                out = out + LambdaPoly({i + j + 1: e * u})
        return out

    # -- derived identities ------------------------------------------------

    def skew_partner(self, a: FieldExpr, b: FieldExpr) -> LambdaPoly:
        """-ε(a,b) [a_{-λ-∂} b], which must equal [b_λ a]."""
        ga, gb = self.field_grade(a), self.field_grade(b)
        e = self.eps(ga, gb) if ga is not None and gb is not None else 1
        ab = self.lambda_bracket(a, b)
        out = LambdaPoly()
        # (-λ-∂)^(j) = sum_i (-1)^j λ^(i) ∂^(j-i)
        for j, c in ab.coeffs.items():
            for i in range(j + 1):
                out = out + LambdaPoly({i: (-1) ** j * divided_derivative(c, j - i, self)})
        return (-e) * out

    def generators(self) -> list[FieldExpr]:
        return [FieldExpr.generator(a) for a in range(self.spec.dim)]


def field_from_words(pairs: Iterable[tuple[Word, Fraction]]) -> FieldExpr:
    out = {}
    for w, v in pairs:
        out[w] = out.get(w, 0) + Fraction(v)
    return FieldExpr(out)
