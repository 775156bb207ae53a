"""Loop algebras, their graded central extensions and mode-scaling derivations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .core import AlgebraSpec, Grade, all_grades, format_terms, sign
from .forms import BilinearForm, invariant_forms
from .linalg import EchelonBuilder, nullspace, rank, solve_in_span


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class CentralTerm:
    """One central element: omega(X^a_m, X^b_n) = s(a) kappa^{ab} m delta_{m+n,0}."""

    label: str
    degree: Grade
    kappa: tuple[tuple[Fraction, ...], ...]
    signs: tuple[int, ...]

    def K(self, a: int, b: int) -> Fraction:
        """Signed coefficient s(a) kappa^{ab}."""
        return self.signs[a] * self.kappa[a][b]

    @classmethod
    def from_form(cls, spec: AlgebraSpec, form: BilinearForm, label: str | None = None):
        signs = tuple(sign(spec.grade(a), form.degree) for a in range(spec.dim))
        return cls(label or "w" + "".join(map(str, form.degree.bits)), form.degree, form.matrix, signs)

    @classmethod
    def unsigned(cls, spec: AlgebraSpec, form: BilinearForm, label: str):
        return cls(label, form.degree, form.matrix, (1,) * spec.dim)


@dataclass(frozen=True)
class Extension:
    """A loop algebra extended by central elements and derivations."""

    spec: AlgebraSpec
    centrals: tuple[CentralTerm, ...] = ()
    derivations: tuple["DerivationMap", ...] = ()

    def central(self, label: str) -> CentralTerm:
        for c in self.centrals:
            if c.label == label:
                return c
        raise KeyError(label)


@dataclass(frozen=True)
class DerivationMap:
    """d(X^a_n) = n phi(X^a)_n; ``phi[i][j]`` is the X^i coefficient of phi(X^j)."""

    label: str
    degree: Grade
    phi: tuple[tuple[Fraction, ...], ...]

    def image(self, a: int) -> dict[int, Fraction]:
        return {i: row[a] for i, row in enumerate(self.phi) if row[a]}


@dataclass(frozen=True)
class AffineElement:
    """Finite combination of X^a_m, central elements and derivations."""

    loop: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    central: Mapping[str, Fraction] = field(default_factory=dict)
    derivation: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("loop", "central", "derivation"):
            object.__setattr__(self, name, {k: Fraction(v) for k, v in getattr(self, name).items() if v})

    @classmethod
    def mode(cls, a: int, m: int, coeff=1):
        return cls(loop={(a, m): coeff})

    def is_zero(self):
        return not (self.loop or self.central or self.derivation)

    def __add__(self, other):
        def merge(x, y):
            out = dict(x)
            for k, v in y.items():
                out[k] = out.get(k, 0) + v
            return out
        return AffineElement(merge(self.loop, other.loop), merge(self.central, other.central),
                             merge(self.derivation, other.derivation))

    def __rmul__(self, k):
        return AffineElement({a: k * v for a, v in self.loop.items()},
                             {a: k * v for a, v in self.central.items()},
                             {a: k * v for a, v in self.derivation.items()})

    def __neg__(self):
        return (-1) * self

    def __sub__(self, other):
        return self + (-other)

    def format(self, spec: AlgebraSpec) -> str:
        parts = [(v, f"{spec.names[a]}_{m}") for (a, m), v in sorted(self.loop.items())]
        parts += [(v, k) for k, v in sorted(self.central.items())]
        parts += [(v, k) for k, v in sorted(self.derivation.items())]
        return format_terms(parts)


def _bracket_modes(ext: Extension, a, m, b, n) -> AffineElement:
    spec = ext.spec
    loop = {(c, m + n): v for c, v in spec.f(a, b).items()}
    central = {}
    if m + n == 0 and m:
        for c in ext.centrals:
            k = c.K(a, b)
            if k:
                central[c.label] = k * m
    return AffineElement(loop, central)


def _deriv_on_mode(d: DerivationMap, a, n) -> AffineElement:
    return AffineElement({(i, n): n * v for i, v in d.image(a).items()})


def loop_bracket(ext: Extension, x: AffineElement, y: AffineElement) -> AffineElement:
    """Bilinear graded bracket; central elements are inert, [d, X_n] = n phi(X)_n."""
    spec = ext.spec
    derivs = {d.label: d for d in ext.derivations}
    out = AffineElement()
    for (a, m), u in x.loop.items():
        for (b, n), v in y.loop.items():
            out = out + (u * v) * _bracket_modes(ext, a, m, b, n)
    for dl, u in x.derivation.items():
        d = derivs[dl]
        for (b, n), v in y.loop.items():
            out = out + (u * v) * _deriv_on_mode(d, b, n)
    for (a, m), u in x.loop.items():
        for dl, v in y.derivation.items():
            d = derivs[dl]
            s = -sign(spec.grade(a), d.degree)
            out = out + (s * u * v) * _deriv_on_mode(d, a, m)
    for dl, u in x.derivation.items():
        for dl2, v in y.derivation.items():
            if not _derivations_commute(spec, derivs[dl], derivs[dl2]):
                raise NotImplementedError("bracket of non-commuting derivations leaves the mode-linear shape")
    return out


def _derivations_commute(spec, d1: DerivationMap, d2: DerivationMap) -> bool:
    s = sign(d1.degree, d2.degree)
    r = spec.dim
    for i in range(r):
        for j in range(r):
            x = sum(d1.phi[i][k] * d2.phi[k][j] - s * d2.phi[i][k] * d1.phi[k][j] for k in range(r))
            if x:
                return False
    return True


# -- cocycle conditions -----------------------------------------------------
#
# With omega(X^a_p, X^b_q) = K^{ab} p delta_{p+q,0} and p a linear form in the
# independent modes (m, n) (k = -m-n), every condition is linear in (m, n);
# the coefficients of m and n must vanish separately.

def _cocycle_residuals(spec: AlgebraSpec, K, a, b, c):
    ga, gb, gc = spec.grade(a), spec.grade(b), spec.grade(c)
    # (sign, first slot, its mode as (coef m, coef n), bracket pair)
    terms = ((sign(ga, gc), a, (1, 0), b, c),
             (sign(gb, ga), b, (0, 1), c, a),
             (sign(gc, gb), c, (-1, -1), a, b))
    rm = rn = Fraction(0)
    for s, x, (pm, pn), y, z in terms:
        tot = sum((v * K(x, d) for d, v in spec.f(y, z).items()), Fraction(0))
        rm += s * pm * tot
        rn += s * pn * tot
    return rm, rn


@dataclass
class CocycleReport:
    antisymmetry: list[tuple[str, str]]
    cocycle: list[tuple[str, str, str]]

    @property
    def ok(self):
        return not (self.antisymmetry or self.cocycle)


def cocycle_check(spec: AlgebraSpec, candidate: CentralTerm) -> CocycleReport:
    names = spec.names
    r = spec.dim
    anti = []
    for a in range(r):
        for b in range(r):
            if candidate.K(a, b) != sign(spec.grade(a), spec.grade(b)) * candidate.K(b, a):
                anti.append((names[a], names[b]))
    bad = []
    for a, b, c in product(range(r), repeat=3):
        if any(_cocycle_residuals(spec, candidate.K, a, b, c)):
            bad.append((names[a], names[b], names[c]))
    return CocycleReport(anti, bad)


def weights(spec: AlgebraSpec) -> list[Fraction]:
    """Eigenvalues of ad of the grading element (which must act diagonally)."""
    if not spec.grading_element:
        raise ConfigurationError(f"{spec.name} has no distinguished grading element")
    h = spec.index(spec.grading_element)
    out = []
    for j in range(spec.dim):
        col = spec.f(h, j)
        if any(i != j for i in col):
            raise ConfigurationError(f"ad {spec.grading_element} is not diagonal on the basis")
        out.append(col.get(j, Fraction(0)))
    return out


@dataclass
class ClassificationResult:
    terms: list[CentralTerm]
    absorbed: dict[str, int]  # degree -> number of constant-term cocycles that are coboundaries
    nontrivial_constant: dict[str, int]

    @property
    def dimension(self):
        return len(self.terms)

    def degrees(self):
        return [t.degree for t in self.terms]


def classify_central_extensions(spec: AlgebraSpec) -> ClassificationResult:
    """Weight-zero cocycles omega(X^a_m, X^b_n) = (K^{ab} m + B^{ab}) delta_{m+n,0}
    modulo coboundaries f([A, B]).

    The K part and the B part decouple (coefficients of m, n versus the
    constant term).  Representatives are rescaled to the invariant form of
    the same degree whenever they are proportional to it.
    """
    wt = weights(spec)
    r = spec.dim
    forms = invariant_forms(spec)
    terms: list[CentralTerm] = []
    absorbed, nontriv = {}, {}
    for w in all_grades(spec.rank):
        pairs = [(a, b) for a in range(r) for b in range(r)
                 if spec.grade(a) + spec.grade(b) == w and wt[a] + wt[b] == 0]
        if not pairs:
            continue
        col = {p: i for i, p in enumerate(pairs)}
        n = len(pairs)
        # unknowns: K at 0..n-1, B at n..2n-1
        rows = []
        for (a, b) in pairs:
            e = sign(spec.grade(a), spec.grade(b))
            rows.append({col[(a, b)]: 1, col[(b, a)]: -e} if (a, b) != (b, a) else
                        ({col[(a, b)]: 1 - e}))
            rows.append({n + col[(a, b)]: 1, n + col[(b, a)]: e} if (a, b) != (b, a) else
                        ({n + col[(a, b)]: 1 + e}))
        for a, b, c in product(range(r), repeat=3):
            if spec.grade(a) + spec.grade(b) + spec.grade(c) != w:
                continue
            ga, gb, gc = spec.grade(a), spec.grade(b), spec.grade(c)
            terms3 = ((sign(ga, gc), a, (1, 0), b, c), (sign(gb, ga), b, (0, 1), c, a),
                      (sign(gc, gb), c, (-1, -1), a, b))
            em, en, e0 = {}, {}, {}
            for s, x, (pm, pn), y, z in terms3:
                for d, v in spec.f(y, z).items():
                    if (x, d) not in col:
                        continue
                    k = col[(x, d)]
                    em[k] = em.get(k, 0) + s * pm * v
                    en[k] = en.get(k, 0) + s * pn * v
                    e0[n + k] = e0.get(n + k, 0) + s * v
            rows.extend(e for e in (em, en, e0) if any(e.values()))
        rows = [{k: v for k, v in row.items() if v} for row in rows]
        sols = nullspace([row for row in rows if row], 2 * n)
        k_sols = [v[:n] for v in sols if any(v[:n]) and not any(v[n:])]
        b_sols = [v for v in sols if not any(v[:n])]
        if len(k_sols) + len(b_sols) != len(sols):
            raise AssertionError("K and B blocks should decouple")
        cob = []
        for c in range(r):
            if spec.grade(c) != w:
                continue
            vec = [Fraction(0)] * (2 * n)
            for (a, b), i in col.items():
                vec[n + i] = spec.coeff(a, b, c)
            if any(vec):
                cob.append({i: x for i, x in enumerate(vec) if x})
        cob_rank = rank(cob, 2 * n)
        absorbed[str(w)] = cob_rank
        if len(b_sols) > cob_rank:
            nontriv[str(w)] = len(b_sols) - cob_rank
        for v in k_sols:
            K = [[Fraction(0)] * r for _ in range(r)]
            for (a, b), i in col.items():
                K[a][b] = v[i]
            terms.append(_normalized_term(spec, w, K, forms))
    for i, t in enumerate(terms):
        if sum(1 for u in terms if u.degree == t.degree) > 1:
            terms[i] = CentralTerm(f"{t.label}_{i}", t.degree, t.kappa, t.signs)
    return ClassificationResult(terms, absorbed, nontriv)


def _normalized_term(spec, w, K, forms) -> CentralTerm:
    signs = tuple(sign(spec.grade(a), w) for a in range(spec.dim))
    kappa = [[signs[a] * K[a][b] for b in range(spec.dim)] for a in range(spec.dim)]
    label = "w" + "".join(map(str, w.bits))
    for form in forms:
        if form.degree != w:
            continue
        flat_k = [x for row in kappa for x in row]
        flat_f = [x for row in form.matrix for x in row]
        c = solve_in_span([flat_k], flat_f)
        if c is not None:
            kappa = [[c[0] * x for x in row] for row in kappa]
            break
    return CentralTerm(label, w, tuple(map(tuple, kappa)), signs)


# -- brute-force oracle ------------------------------------------------------

@dataclass
class BruteForceResult:
    window: int
    dimension: int | None
    by_degree: dict[str, int]
    status: str  # conclusive | inconclusive | degenerate
    representatives: dict[str, list[dict[tuple[str, str], Fraction]]]
    notes: list[str]


def _window_block(spec: AlgebraSpec, w: Grade, s: int, N: int):
    """Unknowns omega(X^a_p, X^b_q), p + q = s, modulo graded antisymmetry."""
    r = spec.dim
    modes = [p for p in range(-N, N + 1) if -N <= s - p <= N]
    index = {}
    canon = {}  # (a, p, b, q) -> (column, sign) or None (forced zero)
    for a, b in product(range(r), repeat=2):
        if spec.grade(a) + spec.grade(b) != w:
            continue
        for p in modes:
            q = s - p
            key, other = (a, p, b, q), (b, q, a, p)
            e = sign(spec.grade(a), spec.grade(b))
            if key == other:
                if e == 1:
                    canon[key] = None
                    continue
            lo = min(key, other)
            if lo not in index:
                index[lo] = len(index)
            if key == lo:
                canon[key] = (index[lo], 1)
            else:
                canon[key] = (index[lo], -e)
    return index, canon


def brute_force_h2(spec: AlgebraSpec, window: int = 3) -> BruteForceResult:
    """Ansatz-free cocycles on the mode window |m|, |n| <= N, modulo coboundaries.

    Every cocycle condition with all three modes and their pairwise sums
    inside the window is imposed.  The system splits by omega's degree and by
    the total mode s = m + n.  Only the s = 0 block can carry genuine
    classes; a class there counts if it has a representative of the shape
    (K m + B) delta_{m+n,0}.  Surviving classes at s != 0 are window edge
    effects and make the result inconclusive.
    """
    N = window
    if N < 2:
        return BruteForceResult(N, None, {}, "inconclusive", {}, ["window must be at least 2"])
    r = spec.dim
    notes: list[str] = []
    by_degree: dict[str, int] = {}
    reps: dict[str, list] = {}
    status = "conclusive"
    if not any(True for _ in spec.nonzero_pairs()):
        notes.append("all brackets vanish: every antisymmetric omega is a cocycle")
        status = "degenerate"
    for w in all_grades(spec.rank):
        dim_w = 0
        for s in range(-N, N + 1):
            index, canon = _window_block(spec, w, s, N)
            ncol = len(index)
            if not ncol:
                continue

            def om(a, p, b, q):
                return canon.get((a, p, b, q))

            eb = EchelonBuilder(ncol)
            rng = range(-N, N + 1)
            for m, n in product(rng, rng):
                k = s - m - n
                if not (-N <= k <= N and -N <= m + n <= N and -N <= n + k <= N and -N <= k + m <= N):
                    continue
                for a, b, c in product(range(r), repeat=3):
                    ga, gb, gc = spec.grade(a), spec.grade(b), spec.grade(c)
                    if ga + gb + gc != w:
                        continue
                    row: dict[int, Fraction] = {}
                    for sg, x, px, y, py, z, pz in ((sign(ga, gc), a, m, b, n, c, k),
                                                    (sign(gb, ga), b, n, c, k, a, m),
                                                    (sign(gc, gb), c, k, a, m, b, n)):
                        for d, v in spec.f(y, z).items():
                            t = om(x, px, d, py + pz)
                            if t is None:
                                continue
                            col, e = t
                            row[col] = row.get(col, 0) + sg * e * v
                    row = {c_: v for c_, v in row.items() if v}
                    if row:
                        eb.add(row)
            z_dim = ncol - eb.rank
            cob = []
            for c in range(r):
                if spec.grade(c) != w:
                    continue
                vec: dict[int, Fraction] = {}
                for (a, p, b, q), t in canon.items():
                    if t is None or (a, p, b, q) not in index:
                        continue
                    v = spec.coeff(a, b, c)
                    if v:
                        vec[t[0]] = vec.get(t[0], 0) + v
                vec = {k_: v for k_, v in vec.items() if v}
                if vec:
                    cob.append(vec)
            b_dim = rank(cob, ncol)
            h = z_dim - b_dim
            if status == "degenerate":
                continue
            if s != 0:
                if h:
                    status = "inconclusive"
                    notes.append(f"degree {w}, total mode {s}: {h} classes at the window edge")
                continue
            # s = 0: check each class has a (K m + B) representative
            ansatz = _linear_ansatz_vectors(spec, w, N, index, canon)
            z_basis = eb.nullspace()
            shaped = [_vec_dict(v) for v in z_basis if _in_span(ansatz + cob, v, ncol)]
            realized = rank(cob + shaped, ncol) - b_dim
            if realized != h:
                status = "inconclusive"
                notes.append(f"degree {w}: {h - realized} classes without linear-in-m shape")
            dim_w += realized
            if realized:
                reps[str(w)] = _ansatz_reps(spec, canon, z_basis, cob, ncol)
        if dim_w:
            by_degree[str(w)] = dim_w
    dimension = None if status == "degenerate" else sum(by_degree.values())
    return BruteForceResult(N, dimension, by_degree, status, reps, notes)


def _vec_dict(v):
    return {i: x for i, x in enumerate(v) if x}


def _in_span(rows, v, ncol) -> bool:
    return rank(list(rows) + [_vec_dict(v)], ncol) == rank(rows, ncol)


def _linear_ansatz_vectors(spec, w, N, index, canon):
    """Span of omega(X^a_p, X^b_{-p}) = K^{ab} p + B^{ab} for all (a, b)."""
    out = []
    r = spec.dim
    for a, b in product(range(r), repeat=2):
        if spec.grade(a) + spec.grade(b) != w:
            continue
        for shape in (lambda p: p, lambda p: 1):
            vec: dict[int, Fraction] = {}
            for p in range(-N, N + 1):
                t = canon.get((a, p, b, -p))
                if t is None:
                    continue
                col, e = t
                vec[col] = vec.get(col, 0) + e * shape(p)
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                out.append(vec)
    return out


def _ansatz_reps(spec, canon, z_basis, cob, ncol):
    """K^{ab} = (omega(X^a_1, X^b_{-1}) - omega(X^a_{-1}, X^b_1)) / 2 for one
    cocycle per independent class, scaled so the first nonzero entry is +1."""
    reps = []
    kept = list(cob)
    names = spec.names
    for v in z_basis:
        if _in_span(kept, v, ncol):
            continue
        kept.append(_vec_dict(v))
        entry = {}
        for a, b in product(range(spec.dim), repeat=2):
            vals = []
            for p in (1, -1):
                t = canon.get((a, p, b, -p))
                vals.append(Fraction(0) if t is None else t[1] * v[t[0]])
            k = (vals[0] - vals[1]) / 2
            if k:
                entry[(names[a], names[b])] = k
        if entry:
            first = next(iter(entry.values()))
            entry = {key: x / first for key, x in entry.items()}
        reps.append(entry)
    return reps


# -- derivations ---------------------------------------------------------------

def derivation_search(spec: AlgebraSpec, degree: Grade) -> list[DerivationMap]:
    """Maps phi of the given degree with
    phi([X, Y]) = [phi(X), Y] and phi([X, Y]) = (-1)^{deg . x} [X, phi(Y)].
    """
    r = spec.dim
    pos = [(i, j) for i in range(r) for j in range(r) if spec.grade(i) == spec.grade(j) + degree]
    col = {p: k for k, p in enumerate(pos)}
    rows = []
    for a, b in product(range(r), repeat=2):
        s = sign(degree, spec.grade(a))
        for out in range(r):
            lhs: dict[int, Fraction] = {}
            for c, v in spec.f(a, b).items():  # phi([a,b])_out = sum_c f^{ab}_c phi[out][c]
                if (out, c) in col:
                    lhs[col[(out, c)]] = lhs.get(col[(out, c)], 0) + v
            e1 = dict(lhs)
            for i in range(r):  # [phi(a), b]_out = sum_i phi[i][a] f^{ib}_out
                v = spec.coeff(i, b, out)
                if v and (i, a) in col:
                    e1[col[(i, a)]] = e1.get(col[(i, a)], 0) - v
            e2 = dict(lhs)
            for i in range(r):  # [a, phi(b)]_out = sum_i phi[i][b] f^{ai}_out
                v = spec.coeff(a, i, out)
                if v and (i, b) in col:
                    e2[col[(i, b)]] = e2.get(col[(i, b)], 0) - s * v
            for e in (e1, e2):
                e = {k: v for k, v in e.items() if v}
                if e:
                    rows.append(e)
    label = "d" + "".join(map(str, degree.bits))
    out = []
    for k, vec in enumerate(nullspace(rows, len(pos))):
        phi = [[Fraction(0)] * r for _ in range(r)]
        for (i, j), v in zip(pos, vec):
            phi[i][j] = v
        out.append(DerivationMap(label if k == 0 else f"{label}_{k}", degree, tuple(map(tuple, phi))))
    return out


def check_leibniz(ext: Extension, d: DerivationMap, modes: Sequence[int] = (-2, -1, 0, 1, 3)) -> list:
    """Leibniz rule of d on all basis pairs at sample modes, central parts included."""
    spec = ext.spec
    bad = []
    for a, b in product(range(spec.dim), repeat=2):
        for m, n in product(modes, repeat=2):
            xa, xb = AffineElement.mode(a, m), AffineElement.mode(b, n)
            dd = AffineElement(derivation={d.label: 1})
            lhs = loop_bracket(ext, dd, loop_bracket(ext, xa, xb))
            rhs = loop_bracket(ext, loop_bracket(ext, dd, xa), xb) + \
                sign(d.degree, spec.grade(a)) * loop_bracket(ext, xa, loop_bracket(ext, dd, xb))
            if (lhs - rhs).is_zero():
                continue
            bad.append((spec.names[a], m, spec.names[b], n, (lhs - rhs)))
    return bad


def standard_extension(spec: AlgebraSpec, with_derivations: bool = True) -> Extension:
    """Central elements from the invariant forms (signs (-1)^{a.deg}) plus derivations."""
    centrals = tuple(CentralTerm.from_form(spec, f) for f in invariant_forms(spec))
    derivs = ()
    if with_derivations:
        derivs = tuple(d for g in all_grades(spec.rank) for d in derivation_search(spec, g))
    return Extension(spec, centrals, derivs)


# -- closed-form relation table -------------------------------------------------

def affine_relations(ext: Extension) -> list[tuple[str, str, dict[str, Fraction], dict[str, Fraction]]]:
    """Every nonzero [X^a_m, X^b_n] for a <= b: (left, right, loop part {X^c: coeff},
    central part {label: coefficient of m delta_{m+n,0}})."""
    spec = ext.spec
    out = []
    for a in range(spec.dim):
        for b in range(a, spec.dim):
            loop = {spec.names[c]: v for c, v in sorted(spec.f(a, b).items())}
            cent = {c.label: c.K(a, b) for c in ext.centrals if c.K(a, b)}
            if loop or cent:
                out.append((spec.names[a], spec.names[b], loop, cent))
    return out


def format_relation(spec, left, right, loop, cent) -> str:
    a, b = spec.index(left), spec.index(right)
    anti = sign(spec.grade(a), spec.grade(b)) == -1
    o, c = ("{", "}") if anti else ("[", "]")
    parts = [(v, f"{n}_{{m+n}}") for n, v in loop.items()]
    parts += [(v, f"m {lbl} delta_{{m+n,0}}") for lbl, v in cent.items()]
    return f"{o}{left}_m, {right}_n{c} = " + format_terms(parts)
