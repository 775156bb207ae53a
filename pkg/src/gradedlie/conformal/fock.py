"""Explicit mode oracle on the vacuum module of the current algebra.

States are PBW-ordered products of creation modes X^a_(n), n < 0, acting on
the vacuum.  Word letter (d, a) corresponds to the mode X^a_(-d-1), so a
canonical word of the lambda-bracket engine and a PBW state share the same
key.  Field modes are computed from the normal-ordering formula

    (:A B:)_(n) = sum_{j<0} A_(j) B_(n-j-1) + ε(A,B) sum_{j>=0} B_(n-j-1) A_(j)

truncated by conformal weight, so every sum is finite.  Nothing here uses
the Wick formulas; it exists to cross-check them.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod

from .fields import FieldExpr, LambdaPoly, VertexAlgebra, Word

State = dict  # Word -> Fraction


def gbinom(x: int, k: int) -> Fraction:
    """Binomial coefficient valid for negative upper argument."""
    if k < 0:
        return Fraction(0)
    return Fraction(prod(x - i for i in range(k)), prod(range(1, k + 1)))


def _add(out: State, state: State, k=1):
    for w, v in state.items():
        out[w] = out.get(w, 0) + k * v
        if not out[w]:
            del out[w]


class FockOracle:
    def __init__(self, va: VertexAlgebra):
        self.va = va
        self.spec = va.spec
        self._cache: dict = {}

    # A creation letter (d, a) is the mode X^a_(-d-1).
    @staticmethod
    def _letter(a: int, n: int):
        return (-n - 1, a)

    def apply_mode(self, a: int, n: int, word: Word) -> State:
        """X^a_(n) acting on a PBW state."""
        key = (a, n, word)
        if key in self._cache:
            return self._cache[key]
        spec = self.spec
        out: State = {}
        if word and word[0][0] < 0:
            # formal central letters commute past with the sign rule only
            e = self.va.eps(spec.grade(a), self.va.letter_grade(word[0]))
            for w, v in self.apply_mode(a, n, word[1:]).items():
                _add(out, self._prepend_central(word[0], w), e * v)
        elif n >= 0:
            if word:
                (d0, b), rest = word[0], word[1:]
                p = -d0 - 1
                # X^a_n X^b_p rest = ε X^b_p X^a_n rest + [X^a_n, X^b_p] rest
                e = self.va.eps(spec.grade(a), spec.grade(b))
                for w, v in self.apply_mode(a, n, rest).items():
                    _add(out, self.apply_mode(b, p, w), e * v)
                _add(out, self._bracket_on(a, n, b, p, rest))
        else:
            l = self._letter(a, n)
            if not word or l < word[0]:
                out = {(l,) + word: Fraction(1)}
            elif l == word[0] and not self.va._self_odd(l):
                out = {(l,) + word: Fraction(1)}
            else:
                (d0, b), rest = word[0], word[1:]
                p = -d0 - 1
                if l == word[0]:
                    # X X = 1/2 [X, X] for a self-odd creation mode
                    _add(out, self._bracket_on(a, n, a, n, rest), Fraction(1, 2))
                else:
                    e = self.va.eps(spec.grade(a), spec.grade(b))
                    for w, v in self.apply_mode(a, n, rest).items():
                        _add(out, self.apply_mode(b, p, w), e * v)
                    _add(out, self._bracket_on(a, n, b, p, rest))
        self._cache[key] = out
        return out

    def _bracket_on(self, a, n, b, p, word: Word) -> State:
        """[X^a_(n), X^b_(p)] = f^{ab}_c X^c_(n+p) + n K^{ab} δ_{n+p,0}"""
        out: State = {}
        for c, v in self.spec.f(a, b).items():
            _add(out, self.apply_mode(c, n + p, word), v)
        if n + p == 0 and n:
            if self.va.pairing[a][b]:
                _add(out, {word: Fraction(1)}, n * self.va.pairing[a][b])
            for i, (_, _, m) in enumerate(self.va.formal):
                if m[a][b]:
                    _add(out, self._prepend_central((-1, i), word), n * m[a][b])
        return out

    def _prepend_central(self, c, word: Word) -> State:
        k = 0
        sgn = 1
        while k < len(word) and word[k][0] < 0 and word[k] < c:
            sgn *= self.va.eps(self.va.letter_grade(c), self.va.letter_grade(word[k]))
            k += 1
        return {word[:k] + (c,) + word[k:]: Fraction(sgn)}

    def apply_field_mode(self, field_word: Word, n: int, state: State) -> State:
        """(Y(field_word))_(n) acting on a state."""
        out: State = {}
        for w, v in state.items():
            _add(out, self._field_mode_word(field_word, n, w), v)
        return out

    def _field_mode_word(self, fw: Word, n: int, target: Word) -> State:
        if not fw:
            return {target: Fraction(1)} if n == -1 else {}
        if len(fw) == 1 and fw[0][0] < 0:
            # a central letter is a constant field: only its (-1) mode survives
            return self._prepend_central(fw[0], target) if n == -1 else {}
        if len(fw) == 1:
            d, a = fw[0]
            # (∂^(d) X)_(n) = (-1)^d C(n, d) X_(n-d)
            c = (-1) ** d * gbinom(n, d)
            if not c:
                return {}
            return {w: c * v for w, v in self.apply_mode(a, n - d, target).items()}
        va = self.va
        head, rest = fw[:1], fw[1:]
        ha, hb = VertexAlgebra.weight(head), VertexAlgebra.weight(rest)
        h = VertexAlgebra.weight(target)
        e = va.eps(va.word_grade(head), va.word_grade(rest))
        out: State = {}
        # B_(p) kills a weight-h state once p >= h + hb, so j >= n - h - hb here
        for j in range(n - h - hb, 0):
            part = self._field_mode_word(rest, n - j - 1, target)
            if part:
                _add(out, self.apply_field_mode(head, j, part))
        for j in range(0, h + ha):
            part = self._field_mode_word(head, j, target)
            if part:
                _add(out, self.apply_field_mode(rest, n - j - 1, part), e)
        return out

    def state(self, f: FieldExpr) -> State:
        """The state f_(-1)|0>, which for a canonical field is f itself."""
        out: State = {}
        for w, v in f.terms.items():
            _add(out, self._field_mode_word(w, -1, ()), v)
        return out

    def lambda_bracket(self, a: FieldExpr, b: FieldExpr) -> LambdaPoly:
        """[a_λ b] read off as a_(j) b|0> for j >= 0."""
        bstate = self.state(b)
        top = max((VertexAlgebra.weight(w) for w in a.terms), default=0) + \
            max((VertexAlgebra.weight(w) for w in bstate), default=0)
        coeffs = {}
        for j in range(top):
            out: State = {}
            for w, v in a.terms.items():
                _add(out, self.apply_field_mode(w, j, bstate), v)
            coeffs[j] = FieldExpr(out)
        return LambdaPoly(coeffs)

    def normal_product(self, a: FieldExpr, b: FieldExpr) -> FieldExpr:
        bstate = self.state(b)
        out: State = {}
        for w, v in a.terms.items():
            _add(out, self.apply_field_mode(w, -1, bstate), v)
        return FieldExpr(out)
