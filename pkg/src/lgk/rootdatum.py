"""Based root data in a fixed lattice basis, their duals, and pinned automorphisms.

A datum stores roots as integer vectors in the character lattice and coroots
as integer vectors in the cocharacter lattice; the two bases are dual, so the
pairing is the ordinary dot product.

For the simply-connected isogeny the cocharacter basis is the simple coroots
(character basis: fundamental weights); for the adjoint isogeny the character
basis is the simple roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InvalidAutomorphism, InvalidType
from .lattice import (
    Matrix,
    Vector,
    dot,
    identity,
    mat_mul,
    mat_vec,
    matrix_order,
    rational_inverse,
    transpose,
)

SC = "sc"
ADJOINT = "adjoint"
CUSTOM = "custom"
_ISOGENY_ALIASES = {
    "sc": SC,
    "simply-connected": SC,
    "simply_connected": SC,
    "adjoint": ADJOINT,
    "ad": ADJOINT,
}


def parse_type(name: str, rank: int | None = None) -> tuple[str, int]:
    """``"B2"`` or ``("B", 2)`` -> ``("B", 2)`` with validation."""
    name = name.strip().upper()
    letter = name[0]
    if len(name) > 1:
        try:
            r = int(name[1:])
        except ValueError:
            raise InvalidType(f"cannot parse Cartan type {name!r}") from None
        if rank is not None and rank != r:
            raise InvalidType(f"rank {rank} conflicts with type {name}")
        rank = r
    if rank is None:
        raise InvalidType(f"missing rank for type {name!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "G": rank == 2,
    }.get(letter, False)
    if not ok:
        raise InvalidType(f"unsupported type/rank {letter}{rank}")
    return letter, rank


def cartan_matrix(letter: str, rank: int) -> Matrix:
    """Cartan matrix with entries ``<alpha_i, alpha_j^vee>`` (Bourbaki labelling)."""
    letter, n = parse_type(letter, rank)
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
    if letter == "G":
        return ((2, -1), (-3, 2))
    chain = n - 1 if letter != "D" else n - 2
    for i in range(chain):
        A[i][i + 1] = A[i + 1][i] = -1
    if letter == "B":
        A[n - 2][n - 1] = -2
    elif letter == "C":
        A[n - 1][n - 2] = -2
    elif letter == "D":
        A[n - 3][n - 1] = A[n - 1][n - 3] = -1
    return tuple(tuple(r) for r in A)


def _reflect(x: Sequence[int], root: Sequence[int], coroot: Sequence[int]) -> Vector:
    k = dot(x, coroot)
    return tuple(a - k * b for a, b in zip(x, root))


@dataclass(frozen=True)
class BasedRootDatum:
    """Lattice data of a reductive group with a chosen simple system.

    ``roots[k]`` pairs with ``coroots[k]``; the positive roots come first,
    ordered by height and then by decreasing simple-root coefficients, and
    ``roots[k + npos]`` is ``-roots[k]``.
    """

    cartan_type: str
    isogeny: str
    rank: int
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    simple: tuple[int, ...]

    # -- derived data -------------------------------------------------------

    @cached_property
    def index(self) -> dict[Vector, int]:
        return {r: k for k, r in enumerate(self.roots)}

    @cached_property
    def coindex(self) -> dict[Vector, int]:
        return {r: k for k, r in enumerate(self.coroots)}

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def positive(self) -> range:
        return range(self.n_positive)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple)

    def is_positive(self, k: int) -> bool:
        return k < self.n_positive

    def negative_index(self, k: int) -> int:
        h = self.n_positive
        return k + h if k < h else k - h

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return dot(x, y)

    @cached_property
    def cartan(self) -> Matrix:
        S = self.simple
        return tuple(
            tuple(dot(self.roots[i], self.coroots[j]) for j in S) for i in S
        )

    @cached_property
    def coefficients(self) -> tuple[tuple[int, ...], ...]:
        """Simple-root coefficients of every root."""
        return tuple(_coefficients(self.roots, [self.roots[i] for i in self.simple]))

    def height(self, k: int) -> int:
        return sum(self.coefficients[k])

    @cached_property
    def simple_reflection_perms(self) -> tuple[tuple[int, ...], ...]:
        """Permutation of root indices induced by each simple reflection."""
        out = []
        for i in self.simple:
            a, ac = self.roots[i], self.coroots[i]
            out.append(tuple(self.index[_reflect(r, a, ac)] for r in self.roots))
        return tuple(out)

    def check(self) -> None:
        """Raise ``ValueError`` if a defining invariant fails."""
        if len(self.roots) != len(self.coroots):
            raise ValueError("roots and coroots differ in number")
        rs = set(self.roots)
        cs = set(self.coroots)
        for a, ac in zip(self.roots, self.coroots):
            if dot(a, ac) != 2:
                raise ValueError(f"<{a}, {ac}> != 2")
            for b, bc in zip(self.roots, self.coroots):
                if _reflect(b, a, ac) not in rs:
                    raise ValueError("root set not reflection stable")
                if _reflect(bc, ac, a) not in cs:
                    raise ValueError("coroot set not reflection stable")
                # reflections act compatibly on the root/coroot bijection
                j = self.index[_reflect(b, a, ac)]
                if self.coroots[j] != _reflect(bc, ac, a):
                    raise ValueError("coroot map not reflection equivariant")
        A = self.cartan
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if (i == j and x != 2) or (i != j and x > 0):
                    raise ValueError("bad Cartan matrix")
        closure = _closure([self.roots[i] for i in self.simple],
                           [self.coroots[i] for i in self.simple])
        if set(r for r, _ in closure) != rs:
            raise ValueError("roots are not generated by the simple system")

    def to_json(self) -> dict:
        return {
            "type": self.cartan_type,
            "rank": self.rank,
            "isogeny": self.isogeny,
            "roots": [list(r) for r in self.roots],
            "coroots": [list(r) for r in self.coroots],
            "simple": list(self.simple),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BasedRootDatum":
        d = cls(
            cartan_type=obj["type"],
            isogeny=obj["isogeny"],
            rank=int(obj["rank"]),
            roots=tuple(tuple(int(x) for x in r) for r in obj["roots"]),
            coroots=tuple(tuple(int(x) for x in r) for r in obj["coroots"]),
            simple=tuple(int(i) for i in obj["simple"]),
        )
        d.check()
        return d

    def __repr__(self) -> str:
        return f"BasedRootDatum({self.cartan_type}, {self.isogeny}, rank={self.rank})"


def _coefficients(vectors, simple_vectors) -> list[tuple[int, ...]]:
    """Express each vector in the Q-span of ``simple_vectors`` (must be integral)."""
    r = len(simple_vectors)
    n = len(simple_vectors[0])
    # pick r independent coordinates for a square solve
    cols = _independent_rows(transpose(simple_vectors), r)
    A = [[simple_vectors[j][c] for j in range(r)] for c in cols]
    Ainv = rational_inverse(A)
    out = []
    for v in vectors:
        x = [sum(Ainv[i][k] * v[c] for k, c in enumerate(cols)) for i in range(r)]
        if any(Fraction(q).denominator != 1 for q in x):
            raise ValueError("vector not an integral combination of simple roots")
        coeffs = tuple(int(q) for q in x)
        recon = tuple(sum(coeffs[j] * simple_vectors[j][c] for j in range(r)) for c in range(n))
        if recon != tuple(v):
            raise ValueError("vector outside the span of simple roots")
        out.append(coeffs)
    return out


def _independent_rows(rows, r) -> list[int]:
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for b in basis:
            p = next(i for i, x in enumerate(b) if x)
            if v[p]:
                f = v[p] / b[p]
                v = [x - f * y for x, y in zip(v, b)]
        if any(v):
            basis.append(v)
            chosen.append(idx)
            if len(chosen) == r:
                return chosen
    raise ValueError("simple roots are linearly dependent")


def _closure(simple_roots, simple_coroots) -> list[tuple[Vector, Vector]]:
    seen = {}
    frontier = list(zip(map(tuple, simple_roots), map(tuple, simple_coroots)))
    for a, ac in frontier:
        seen[a] = ac
    while frontier:
        nxt = []
        for b, bc in frontier:
            for a, ac in zip(simple_roots, simple_coroots):
                nb = _reflect(b, a, ac)
                if nb not in seen:
                    seen[nb] = _reflect(bc, ac, a)
                    nxt.append((nb, seen[nb]))
        frontier = nxt
    return list(seen.items())


def from_simple_system(
    simple_roots: Sequence[Sequence[int]],
    simple_coroots: Sequence[Sequence[int]],
    cartan_type: str | None = None,
    isogeny: str = CUSTOM,
) -> BasedRootDatum:
    """Generate the full datum from simple roots and coroots in given lattice coordinates."""
    simple_roots = [tuple(map(int, r)) for r in simple_roots]
    simple_coroots = [tuple(map(int, r)) for r in simple_coroots]
    pairs = _closure(simple_roots, simple_coroots)
    coeffs = _coefficients([p[0] for p in pairs], simple_roots)
    pos = [(c, p) for c, p in zip(coeffs, pairs) if all(x >= 0 for x in c)]
    if 2 * len(pos) != len(pairs):
        raise ValueError("simple system does not split roots into positive/negative")
    pos.sort(key=lambda cp: (sum(cp[0]), tuple(-x for x in cp[0])))
    roots = [p[0] for _, p in pos]
    coroots = [p[1] for _, p in pos]
    roots += [tuple(-x for x in r) for r in roots[:]]
    coroots += [tuple(-x for x in r) for r in coroots[:]]
    r = len(simple_roots)
    lattice_rank = len(simple_roots[0])
    if cartan_type is None:
        cartan_type = identify_type(
            tuple(tuple(dot(a, b) for b in simple_coroots) for a in simple_roots)
        ) or "?"
    d = BasedRootDatum(
        cartan_type=cartan_type,
        isogeny=isogeny,
        rank=lattice_rank,
        roots=tuple(roots),
        coroots=tuple(coroots),
        simple=tuple(range(r)),
    )
    return d


def build_from_type(name: str, isogeny: str = SC, rank: int | None = None) -> BasedRootDatum:
    """Simply-connected or adjoint datum of a type in A, B, C, D, G2."""
    letter, n = parse_type(name, rank)
    iso = _ISOGENY_ALIASES.get(isogeny.lower() if isinstance(isogeny, str) else isogeny)
    if iso is None:
        raise InvalidType(f"unsupported isogeny {isogeny!r}")
    A = cartan_matrix(letter, n)
    I = identity(n)
    if iso == SC:
        # alpha_j in fundamental weights is row j of the Cartan matrix
        simple_roots = [A[j] for j in range(n)]
        simple_coroots = [I[j] for j in range(n)]
    else:
        simple_roots = [I[j] for j in range(n)]
        simple_coroots = [tuple(A[i][j] for i in range(n)) for j in range(n)]
    return from_simple_system(simple_roots, simple_coroots, f"{letter}{n}", iso)


def dual(d: BasedRootDatum) -> BasedRootDatum:
    """Swap the roles of characters and cocharacters."""
    letter, n = d.cartan_type[0], d.cartan_type[1:]
    letter = {"B": "C", "C": "B"}.get(letter, letter)
    iso = {SC: ADJOINT, ADJOINT: SC}.get(d.isogeny, d.isogeny)
    return from_simple_system(
        [d.coroots[i] for i in d.simple],
        [d.roots[i] for i in d.simple],
        f"{letter}{n}",
        iso,
    )


def rho_check_double(d: BasedRootDatum) -> Vector:
    """Sum of the positive coroots (twice the half-sum, kept integral)."""
    out = [0] * d.rank
    for k in d.positive:
        out = [a + b for a, b in zip(out, d.coroots[k])]
    return tuple(out)


def identify_type(A: Sequence[Sequence[int]]) -> str | None:
    """Name of the irreducible type with Cartan matrix ``A`` up to relabelling."""
    n = len(A)
    A = tuple(tuple(r) for r in A)
    if n == 0:
        return "T0"
    refs = []
    for letter in "ABCDG":
        try:
            refs.append((letter, cartan_matrix(letter, n)))
        except InvalidType:
            continue
    # the given labelling wins, so B2 and C2 stay distinguishable
    for letter, ref in refs:
        if A == tuple(tuple(r) for r in ref):
            return f"{letter}{n}"
    for letter, ref in refs:
        for p in itertools.permutations(range(n)):
            if all(A[p[i]][p[j]] == ref[i][j] for i in range(n) for j in range(n)):
                return f"{letter}{n}"
    return None


# -- pinned automorphisms ----------------------------------------------------


@dataclass(frozen=True)
class PinnedAutomorphism:
    """Lattice automorphism permuting the simple roots (a diagram automorphism).

    ``perm[i] = j`` means alpha_i maps to alpha_j (indices into ``datum.simple``).
    ``char_matrix`` acts on character coordinates, ``cochar_matrix`` on
    cocharacter coordinates; both act on column vectors.
    """

    datum: BasedRootDatum
    perm: tuple[int, ...]
    char_matrix: Matrix
    cochar_matrix: Matrix

    def act_char(self, x: Sequence[int]) -> Vector:
        return mat_vec(self.char_matrix, x)

    def act_cochar(self, y: Sequence[int]) -> Vector:
        return mat_vec(self.cochar_matrix, y)

    @cached_property
    def root_perm(self) -> tuple[int, ...]:
        idx = self.datum.index
        return tuple(idx[self.act_char(r)] for r in self.datum.roots)

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    @cached_property
    def order(self) -> int:
        return matrix_order(self.char_matrix)

    def power(self, k: int) -> "PinnedAutomorphism":
        k %= self.order
        p = tuple(range(len(self.perm)))
        for _ in range(k):
            p = tuple(self.perm[i] for i in p)
        return pinned_automorphism(self.datum, p)

    def compose(self, other: "PinnedAutomorphism") -> "PinnedAutomorphism":
        """``self`` after ``other``."""
        return pinned_automorphism(self.datum, tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    def inverse(self) -> "PinnedAutomorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return pinned_automorphism(self.datum, tuple(inv))

    def check(self) -> None:
        d = self.datum
        rs = set(d.roots)
        for k, r in enumerate(d.roots):
            img = self.act_char(r)
            if img not in rs:
                raise InvalidAutomorphism("lattice map does not permute the roots")
            j = d.index[img]
            if (k < d.n_positive) != (j < d.n_positive):
                raise InvalidAutomorphism("lattice map does not fix the positive system")
            if self.act_cochar(d.coroots[k]) != d.coroots[j]:
                raise InvalidAutomorphism("cocharacter map incompatible with roots")
        for i, j in enumerate(self.perm):
            if self.act_char(d.roots[d.simple[i]]) != d.roots[d.simple[j]]:
                raise InvalidAutomorphism("lattice map disagrees with simple permutation")
        # <theta x, theta^vee y> = <x, y>
        if mat_mul(transpose(self.char_matrix), self.cochar_matrix) != identity(d.rank):
            raise InvalidAutomorphism("pairing not preserved")
        matrix_order(self.char_matrix)


def _lattice_map_from_images(src: Sequence[Vector], dst: Sequence[Vector], rank: int) -> Matrix:
    """Integer matrix M with ``M src_k = dst_k``; requires ``src`` to span Q^rank."""
    if len(src) != rank:
        raise InvalidAutomorphism("simple system does not span the lattice rationally")
    S = [list(c) for c in transpose(src)]  # columns are src vectors
    T = [list(c) for c in transpose(dst)]
    Sinv = rational_inverse(S)
    M = [[sum(Fraction(T[i][k]) * Sinv[k][j] for k in range(rank)) for j in range(rank)] for i in range(rank)]
    if any(x.denominator != 1 for row in M for x in row):
        raise InvalidAutomorphism("diagram permutation does not preserve the lattice")
    return tuple(tuple(int(x) for x in row) for row in M)


def pinned_automorphism(d: BasedRootDatum, perm: Sequence[int]) -> PinnedAutomorphism:
    """The pinned automorphism realizing a permutation of the simple roots."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(len(d.simple))):
        raise InvalidAutomorphism(f"{perm} is not a permutation of the simple nodes")
    A = d.cartan
    n = len(perm)
    if any(A[perm[i]][perm[j]] != A[i][j] for i in range(n) for j in range(n)):
        raise InvalidAutomorphism(f"{perm} does not preserve the Cartan matrix")
    src = [d.roots[i] for i in d.simple]
    dst = [d.roots[d.simple[perm[i]]] for i in range(n)]
    csrc = [d.coroots[i] for i in d.simple]
    cdst = [d.coroots[d.simple[perm[i]]] for i in range(n)]
    M = _lattice_map_from_images(src, dst, d.rank)
    C = _lattice_map_from_images(csrc, cdst, d.rank)
    theta = PinnedAutomorphism(d, perm, M, C)
    theta.check()
    return theta


def identity_automorphism(d: BasedRootDatum) -> PinnedAutomorphism:
    return pinned_automorphism(d, tuple(range(len(d.simple))))


def diagram_automorphisms(d: BasedRootDatum) -> list[PinnedAutomorphism]:
    """All pinned automorphisms of the datum, identity first."""
    n = len(d.simple)
    A = d.cartan
    out = []
    for p in itertools.permutations(range(n)):
        if all(A[p[i]][p[j]] == A[i][j] for i in range(n) for j in range(n)):
            try:
                out.append(pinned_automorphism(d, p))
            except InvalidAutomorphism:
                # permutation of the diagram that the lattice does not support
                continue
    return out
