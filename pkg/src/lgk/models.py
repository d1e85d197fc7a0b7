"""Exact matrix realizations of classical groups with their standard pinnings.

These models are the independent oracle for the symbolic layers: Tits
sections, Chevalley involutions and fixed-point subgroups are evaluated as
honest matrices over Q(zeta_N) and compared with the lattice-level answers.

Positions of the standard representation carry weights in epsilon
coordinates. Orthogonal and symplectic forms are antidiagonal, so the
diagonal torus and the upper triangular Borel are the standard pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .cyclotomic import (
    CMatrix,
    Cyc,
    CycField,
    cmat_bracket,
    cmat_det,
    cmat_diag,
    cmat_eq,
    cmat_exp_nilpotent,
    cmat_from_int,
    cmat_identity,
    cmat_inverse,
    cmat_mul,
    cmat_scale,
    cmat_transpose,
    cmat_zero,
)
from .errors import DatumMismatch, InvalidType, UnassignedSymbol
from .lattice import kernel_basis, rational_inverse
from .rootdatum import BasedRootDatum, cartan_matrix, parse_type
from .torus import KElem, TorusPoint, eval_root
from .weyl import WeylElem

MAX_MODEL_RANK = 4


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


class ClassicalModel:
    """Standard representation of SL_{n+1}, SO_{2n+1}, Sp_{2n} or SO_{2n}."""

    def __init__(self, letter: str, n: int, N: int):
        letter, n = parse_type(letter, n)
        if letter not in "ABCD" or n > MAX_MODEL_RANK:
            raise InvalidType(f"no matrix model for {letter}{n}")
        self.letter, self.n, self.N = letter, n, N
        self.F = CycField(N)
        if letter == "A":
            m = n + 1
            self.dim = m
            self.weights = [_unit(m, p) for p in range(m)]
            self.J = None
            self.simple_eps = [_sub(_unit(m, i), _unit(m, i + 1)) for i in range(n)]
        else:
            e = lambda i: _unit(n, i)  # noqa: E731
            neg = lambda v: tuple(-x for x in v)  # noqa: E731
            if letter == "B":
                self.dim = 2 * n + 1
                self.weights = [e(p) for p in range(n)] + [(0,) * n] + [neg(e(n - 1 - q)) for q in range(n)]
            else:
                self.dim = 2 * n
                self.weights = [e(p) for p in range(n)] + [neg(e(n - 1 - q)) for q in range(n)]
            d = self.dim
            J = [[0] * d for _ in range(d)]
            for p in range(d):
                J[p][d - 1 - p] = -1 if (letter == "C" and p >= n) else 1
            self.J = tuple(tuple(r) for r in J)
            simple = [_sub(e(i), e(i + 1)) for i in range(n - 1)]
            if letter == "B":
                simple.append(e(n - 1))
            elif letter == "C":
                simple.append(tuple(2 * x for x in e(n - 1)))
            else:
                simple.append(tuple(a + b for a, b in zip(e(n - 2), e(n - 1))))
            self.simple_eps = simple
        self.simple_coroots_eps = [self.coroot_eps(a) for a in self.simple_eps]
        A = tuple(
            tuple(int(sum(x * y for x, y in zip(a, c))) for c in self.simple_coroots_eps) for a in self.simple_eps
        )
        if A != cartan_matrix(letter, n):
            raise AssertionError(f"model Cartan matrix {A} disagrees with type {letter}{n}")

    @staticmethod
    def coroot_eps(a) -> tuple[Fraction, ...]:
        aa = sum(x * x for x in a)
        return tuple(Fraction(2 * x, aa) for x in a)

    def pair_weight(self, p: int, coroot_eps) -> Fraction:
        return sum(Fraction(x) * y for x, y in zip(self.weights[p], coroot_eps))

    @lru_cache(maxsize=None)
    def root_space_basis(self, alpha: tuple[int, ...]) -> tuple[tuple[tuple[int, int], int], ...]:
        """Primitive integer vector spanning g_alpha, as ((p, q), coefficient) pairs."""
        pairs = [
            (p, q)
            for p in range(self.dim)
            for q in range(self.dim)
            if _sub(self.weights[p], self.weights[q]) == tuple(alpha)
        ]
        if not pairs:
            raise ValueError(f"{alpha} is not a root of the model")
        if self.J is None:
            if len(pairs) != 1:
                raise AssertionError("SL root spaces are one dimensional")
            return ((pairs[0], 1),)
        d = self.dim
        J = self.J
        rows = []
        for a in range(d):
            for b in range(d):
                # (X^T J + J X)[a][b] = sum_k X[k][a] J[k][b] + J[a][k] X[k][b]
                row = []
                for p, q in pairs:
                    v = 0
                    if q == a:
                        v += J[p][b]
                    if q == b:
                        v += J[a][p]
                    row.append(v)
                if any(row):
                    rows.append(row)
        ker = kernel_basis(rows, len(pairs)) if rows else [_unit(len(pairs), 0)]
        if len(ker) != 1:
            raise AssertionError(f"root space for {alpha} has dimension {len(ker)}")
        v = ker[0]
        if next(x for x in v if x) < 0:
            v = tuple(-x for x in v)
        return tuple((pq, c) for pq, c in zip(pairs, v) if c)

    def matrix_of(self, entries) -> CMatrix:
        M = cmat_zero(self.F, self.dim)
        for (p, q), c in entries:
            M[p][q] = M[p][q] + c
        return M

    @cached_property
    def simple_X(self) -> list[CMatrix]:
        return [self.matrix_of(self.root_space_basis(a)) for a in self.simple_eps]

    @cached_property
    def simple_H(self) -> list[CMatrix]:
        out = []
        for c in self.simple_coroots_eps:
            out.append(cmat_diag([self.F.rational(self.pair_weight(p, c)) for p in range(self.dim)]))
        return out

    @cached_property
    def simple_Y(self) -> list[CMatrix]:
        """X_{-alpha_i} normalized by [X_alpha, X_{-alpha}] = H_alpha."""
        out = []
        for a, X, H in zip(self.simple_eps, self.simple_X, self.simple_H):
            Y0 = self.matrix_of(self.root_space_basis(tuple(-x for x in a)))
            B = cmat_bracket(X, Y0)
            p = next(p for p in range(self.dim) if not H[p][p].is_zero())
            lam = B[p][p] / H[p][p]
            Y = cmat_scale(lam.inverse(), Y0)
            if not cmat_eq(cmat_bracket(X, Y), H):
                raise AssertionError("bracket of root vectors is not proportional to H")
            out.append(Y)
        return out

    @cached_property
    def n_matrices(self) -> list[CMatrix]:
        """exp(X) exp(-Y) exp(X): image of ((0, 1), (-1, 0)) under each simple SL2."""
        out = []
        for X, Y in zip(self.simple_X, self.simple_Y):
            eX = cmat_exp_nilpotent(X)
            eY = cmat_exp_nilpotent(cmat_scale(-1, Y))
            out.append(cmat_mul(cmat_mul(eX, eY), eX))
        return out

    @cached_property
    def n_inverse_matrices(self) -> list[CMatrix]:
        out = []
        for X, Y in zip(self.simple_X, self.simple_Y):
            emX = cmat_exp_nilpotent(cmat_scale(-1, X))
            eY = cmat_exp_nilpotent(Y)
            out.append(cmat_mul(cmat_mul(emX, eY), emX))
        return out

    def form_matrix(self) -> CMatrix | None:
        return cmat_from_int(self.F, self.J) if self.J is not None else None

    def preserves_form(self, g: CMatrix) -> bool:
        if self.J is None:
            return True
        J = self.form_matrix()
        return cmat_eq(cmat_mul(cmat_mul(cmat_transpose(g), J), g), J)

    def in_lie_algebra(self, X: CMatrix) -> bool:
        if self.J is None:
            tr = self.F.zero()
            for i in range(self.dim):
                tr = tr + X[i][i]
            return tr.is_zero()
        J = self.form_matrix()
        S = cmat_mul(cmat_transpose(X), J)
        T = cmat_mul(J, X)
        return all((a + b).is_zero() for r, s in zip(S, T) for a, b in zip(r, s))


@lru_cache(maxsize=None)
def classical_model(letter: str, n: int, N: int) -> ClassicalModel:
    return ClassicalModel(letter, n, N)


# -- the Lie algebra with a Chevalley-type basis -----------------------------------


class LieModel:
    """g in the standard representation, with basis X_beta (all roots, datum order) then H_i.

    Linear maps of g are matrices acting on coordinate columns in this basis.
    """

    def __init__(self, datum: BasedRootDatum, cm: ClassicalModel):
        self.datum = datum
        self.cm = cm
        self.F = cm.F
        d = datum
        r = len(d.simple)
        self.eps_roots = []
        for coeffs in d.coefficients:
            v = [0] * len(cm.simple_eps[0])
            for c, a in zip(coeffs, cm.simple_eps):
                v = [x + c * y for x, y in zip(v, a)]
            self.eps_roots.append(tuple(v))
        vectors: dict[int, CMatrix] = {}
        for i in range(r):
            vectors[d.simple[i]] = cm.simple_X[i]
            vectors[d.negative_index(d.simple[i])] = cm.simple_Y[i]
        for k in sorted(d.positive, key=d.height):
            if k in vectors:
                continue
            coeffs = d.coefficients[k]
            for i in range(r):
                rest = tuple(c - int(j == i) for j, c in enumerate(coeffs))
                j = self._root_with_coeffs(rest)
                if j is not None and j in vectors:
                    vectors[k] = cmat_bracket(cm.simple_X[i], vectors[j])
                    nk, nj = d.negative_index(k), d.negative_index(j)
                    vectors[nk] = cmat_bracket(cm.simple_Y[i], vectors[nj])
                    break
            else:
                raise AssertionError(f"could not build root vector for {coeffs}")
        self.root_vectors = [vectors[k] for k in range(len(d.roots))]
        self.basis = self.root_vectors + list(cm.simple_H)
        self.dim = len(self.basis)
        self._support = []
        for k, X in enumerate(self.root_vectors):
            p, q = next((p, q) for p in range(cm.dim) for q in range(cm.dim) if not X[p][q].is_zero())
            self._support.append((p, q, X[p][q].inverse()))
        # left inverse for the Cartan part on a set of independent diagonal positions
        diag_rows = [[cm.simple_H[i][p][p].c[0] for i in range(r)] for p in range(cm.dim)]
        chosen, basis_rows = [], []
        for p, row in enumerate(diag_rows):
            trial = basis_rows + [row]
            if _rank(trial) == len(trial):
                basis_rows, chosen = trial, chosen + [p]
            if len(chosen) == r:
                break
        self._hpos = chosen
        self._hinv = rational_inverse(basis_rows)

    def _root_with_coeffs(self, coeffs) -> int | None:
        for k, c in enumerate(self.datum.coefficients):
            if c == tuple(coeffs):
                return k
        return None

    @property
    def rank(self) -> int:
        return len(self.datum.simple)

    def h_index(self, i: int) -> int:
        return len(self.root_vectors) + i

    def coords(self, M: CMatrix, verify: bool = True) -> list[Cyc]:
        F = self.F
        out = [M[p][q] * inv for p, q, inv in self._support]
        r = self.rank
        diag = [M[p][p] for p in self._hpos]
        for i in range(r):
            acc = F.zero()
            for k in range(r):
                if self._hinv[i][k]:
                    acc = acc + diag[k] * self._hinv[i][k]
            out.append(acc)
        if verify and not cmat_eq(self.from_coords(out), M):
            raise ValueError("matrix is not in the span of the Lie algebra basis")
        return out

    def from_coords(self, v: Sequence[Cyc]) -> CMatrix:
        M = cmat_zero(self.F, self.cm.dim)
        for c, B in zip(v, self.basis):
            if c.is_zero():
                continue
            for p in range(self.cm.dim):
                for q in range(self.cm.dim):
                    if not B[p][q].is_zero():
                        M[p][q] = M[p][q] + c * B[p][q]
        return M

    def linear_map(self, images: Sequence[CMatrix]) -> CMatrix:
        """Matrix of the map sending basis[j] to images[j]."""
        cols = [self.coords(M) for M in images]
        return cmat_transpose(cols)

    def apply(self, L: CMatrix, M: CMatrix) -> CMatrix:
        v = self.coords(M)
        w = [sum((L[i][j] * v[j] for j in range(self.dim) if not v[j].is_zero()), self.F.zero()) for i in range(self.dim)]
        return self.from_coords(w)

    def ad_group(self, g: CMatrix, g_inv: CMatrix | None = None) -> CMatrix:
        """Ad(g) on g for g in the standard group model."""
        gi = g_inv if g_inv is not None else cmat_inverse(g)
        return self.linear_map([cmat_mul(cmat_mul(g, B), gi) for B in self.basis])

    def ad_torus(self, root_values: Sequence[Cyc]) -> CMatrix:
        """Ad(t) given the values alpha(t) on all roots (datum order)."""
        one = self.F.one()
        return cmat_diag(list(root_values) + [one] * self.rank)

    def hom_from_generators(self, imgX: Sequence[CMatrix], imgY: Sequence[CMatrix]) -> CMatrix:
        """Linear map determined by images of the simple X_{+-alpha_i}, extended by brackets.

        The result is a Lie algebra homomorphism only if the images satisfy the
        Serre relations; callers verify this with ``is_lie_hom``.
        """
        d = self.datum
        r = self.rank
        imgs: dict[int, CMatrix] = {}
        for i in range(r):
            imgs[d.simple[i]] = imgX[i]
            imgs[d.negative_index(d.simple[i])] = imgY[i]
        for k in sorted(d.positive, key=d.height):
            if k in imgs:
                continue
            coeffs = d.coefficients[k]
            for i in range(r):
                rest = tuple(c - int(j == i) for j, c in enumerate(coeffs))
                j = self._root_with_coeffs(rest)
                if j is not None and j in imgs:
                    imgs[k] = cmat_bracket(imgX[i], imgs[j])
                    imgs[d.negative_index(k)] = cmat_bracket(imgY[i], imgs[d.negative_index(j)])
                    break
        images = [imgs[k] for k in range(len(d.roots))]
        images += [cmat_bracket(imgX[i], imgY[i]) for i in range(r)]
        return self.linear_map(images)

    def is_lie_hom(self, L: CMatrix) -> bool:
        """Check L[a, b] = [La, Lb] on all basis pairs."""
        imgs = [self.from_coords([row[j] for row in L]) for j in range(self.dim)]
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                lhs = self.apply(L, cmat_bracket(self.basis[a], self.basis[b]))
                if not cmat_eq(lhs, cmat_bracket(imgs[a], imgs[b])):
                    return False
        return True

    def image(self, L: CMatrix, j: int) -> CMatrix:
        return self.from_coords([row[j] for row in L])


def _rank(rows) -> int:
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


# -- group models attached to a datum ----------------------------------------------

STANDARD = "standard"
ADJOINT_REP = "adjoint"


@dataclass
class MatrixGroupModel:
    """A datum realized in a classical model, in the standard or adjoint representation."""

    datum: BasedRootDatum
    classical: ClassicalModel
    rep: str
    exponents: list[list[int]] | None  # exponents[p][k] for the standard rep
    assignment: dict[str, Cyc] = field(default_factory=dict)

    @cached_property
    def lie(self) -> LieModel:
        return LieModel(self.datum, self.classical)

    @property
    def F(self) -> CycField:
        return self.classical.F

    @property
    def N(self) -> int:
        return self.classical.N

    @property
    def dim(self) -> int:
        return self.classical.dim if self.rep == STANDARD else self.lie.dim

    def value(self, x: KElem) -> Cyc:
        if x.N != self.N:
            raise DatumMismatch(f"K element with N={x.N} in a model over Q(zeta_{self.N})")
        out = self.F.zeta(x.zeta)
        for s, e in x.free:
            if s not in self.assignment:
                raise UnassignedSymbol(s)
            out = out * self.assignment[s] ** e
        return out

    def identity(self) -> CMatrix:
        return cmat_identity(self.F, self.dim)

    def torus_matrix(self, t: TorusPoint) -> CMatrix:
        if self.rep == STANDARD:
            vals = [self.value(x) for x in t.coords]
            diag = []
            for row in self.exponents:
                acc = self.F.one()
                for v, e in zip(vals, row):
                    if e:
                        acc = acc * v ** e
                diag.append(acc)
            return cmat_diag(diag)
        return self.lie.ad_torus([self.value(eval_root(a, t)) for a in self.datum.roots])

    @cached_property
    def gen_matrices(self) -> list[CMatrix]:
        if self.rep == STANDARD:
            return self.classical.n_matrices
        return [
            self.lie.ad_group(n, ninv)
            for n, ninv in zip(self.classical.n_matrices, self.classical.n_inverse_matrices)
        ]

    def word_matrix(self, word: Sequence[int]) -> CMatrix:
        out = self.identity()
        for i in word:
            out = cmat_mul(out, self.gen_matrices[i])
        return out

    def weyl_matrix(self, w: WeylElem) -> CMatrix:
        return self.word_matrix(w.word)

    def embed_ext(self, e) -> CMatrix:
        """Matrix of an ExtWeylElem t . n(w)."""
        return cmat_mul(self.torus_matrix(e.t), self.weyl_matrix(e.w))

    def det(self, g: CMatrix) -> Cyc:
        return cmat_det(g)

    def preserves_form(self, g: CMatrix) -> bool:
        return self.rep != STANDARD or self.classical.preserves_form(g)


def _torus_exponents(d: BasedRootDatum, cm: ClassicalModel) -> list[list[int]] | None:
    """Exponents of the datum's cocharacter basis on each standard position, if integral."""
    r = len(d.simple)
    if d.rank != r:
        return None
    # columns of S: simple coroots in datum cochar coordinates
    S = [[d.coroots[d.simple[i]][k] for i in range(r)] for k in range(r)]
    Sinv = rational_inverse(S)  # basis vector e_k = sum_i Sinv[i][k] alpha_i^vee
    out = []
    for p in range(cm.dim):
        row = []
        for k in range(r):
            x = sum(Sinv[i][k] * cm.pair_weight(p, cm.simple_coroots_eps[i]) for i in range(r))
            if Fraction(x).denominator != 1:
                return None
            row.append(int(x))
        out.append(row)
    return out


def realize(
    d: BasedRootDatum,
    N: int = 24,
    assignment: Mapping[str, object] | None = None,
    rep: str | None = None,
) -> MatrixGroupModel:
    """Matrix model of a datum of classical type (rank at most 4).

    The standard representation is used when the datum's cocharacters give
    integral weights on it; otherwise (or when ``rep="adjoint"``) the adjoint
    representation on the Lie algebra is used.
    """
    letter, n = d.cartan_type[0], int(d.cartan_type[1:])
    if d.cartan != cartan_matrix(letter, n):
        raise InvalidType("datum simple system is not in standard order")
    cm = classical_model(letter, n, N)
    F = cm.F
    assign = {}
    for s, v in (assignment or {}).items():
        assign[s] = v if isinstance(v, Cyc) else F.rational(Fraction(v))
    exps = _torus_exponents(d, cm)
    if rep is None:
        rep = STANDARD if exps is not None else ADJOINT_REP
    if rep == STANDARD and exps is None:
        raise InvalidType("cocharacter lattice does not act integrally on the standard representation")
    if rep not in (STANDARD, ADJOINT_REP):
        raise ValueError(f"unknown representation {rep!r}")
    return MatrixGroupModel(d, cm, rep, exps, assign)


def check_tits_well_defined(d: BasedRootDatum, N: int = 24, model: MatrixGroupModel | None = None):
    """Tits sections against matrices, for every w in W.

    Every reduced word of w must give the same symbolic product, and that
    product's matrix must equal the direct product of generator matrices
    along each reduced word. Words w.s_i (which may drop length) are
    compared as well, so the torus correction is exercised too.
    """
    from .check import Check
    from .tits import tits_section, word_product
    from .weyl import enumerate_group, reduced_words

    model = model or realize(d, N)
    count = 0
    for w in enumerate_group(d):
        ref = tits_section(w, N)
        ref_m = model.embed_ext(ref)
        for word in reduced_words(w):
            count += 1
            if word_product(d, word, N) != ref:
                return Check(False, {"word": [i + 1 for i in word], "reason": "symbolic"})
            if not cmat_eq(model.word_matrix(word), ref_m):
                return Check(False, {"word": [i + 1 for i in word], "reason": "matrix"})
        for i in range(len(d.simple)):
            word = w.word + (i,)
            if not cmat_eq(model.embed_ext(word_product(d, word, N)), model.word_matrix(word)):
                return Check(False, {"word": [k + 1 for k in word], "reason": "length drop"})
    return Check(True, {"words": count})
