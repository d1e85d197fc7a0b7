"""Weyl group elements as lattice automorphisms with canonical reduced words."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import DatumMismatch
from .lattice import Matrix, Vector, identity, mat_mul, mat_vec
from .rootdatum import BasedRootDatum

DEFAULT_WEYL_CAP = 10_000


def _reflection_matrices(d: BasedRootDatum, i: int) -> tuple[Matrix, Matrix]:
    a = d.roots[d.simple[i]]
    ac = d.coroots[d.simple[i]]
    n = d.rank
    M = tuple(tuple(int(r == c) - a[r] * ac[c] for c in range(n)) for r in range(n))
    C = tuple(tuple(int(r == c) - ac[r] * a[c] for c in range(n)) for r in range(n))
    return M, C


@dataclass(frozen=True, eq=False)
class WeylElem:
    """An element w of the Weyl group.

    ``char_matrix`` acts on character coordinates and ``cochar_matrix`` on
    cocharacter coordinates (column vectors); the two are contragredient.
    Equality and hashing use the character matrix only.
    """

    datum: BasedRootDatum
    char_matrix: Matrix
    cochar_matrix: Matrix = field(repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElem):
            return NotImplemented
        return self.char_matrix == other.char_matrix and (
            self.datum is other.datum or self.datum == other.datum
        )

    def __hash__(self) -> int:
        return hash(self.char_matrix)

    def __repr__(self) -> str:
        return f"WeylElem({self.word_1based})"

    # -- actions ------------------------------------------------------------

    def act_char(self, x: Sequence[int]) -> Vector:
        return mat_vec(self.char_matrix, x)

    def act_cochar(self, y: Sequence[int]) -> Vector:
        return mat_vec(self.cochar_matrix, y)

    @cached_property
    def root_perm(self) -> tuple[int, ...]:
        idx = self.datum.index
        return tuple(idx[self.act_char(r)] for r in self.datum.roots)

    def act_root(self, k: int) -> int:
        return self.root_perm[k]

    @cached_property
    def inversion_set(self) -> frozenset[int]:
        """Indices of positive roots alpha with w(alpha) < 0."""
        d = self.datum
        return frozenset(k for k in d.positive if not d.is_positive(self.root_perm[k]))

    @property
    def length(self) -> int:
        return len(self.inversion_set)

    def is_identity(self) -> bool:
        return self.char_matrix == identity(self.datum.rank)

    # -- group structure ----------------------------------------------------

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        return compose(self, other)

    def inverse(self) -> "WeylElem":
        return invert(self)

    def left_descents(self) -> list[int]:
        """Simple indices i with l(s_i w) < l(w), i.e. w^{-1} alpha_i < 0."""
        d = self.datum
        inv = self.inverse_root_perm
        return [i for i, s in enumerate(d.simple) if not d.is_positive(inv[s])]

    def right_descents(self) -> list[int]:
        d = self.datum
        return [i for i, s in enumerate(d.simple) if not d.is_positive(self.root_perm[s])]

    @cached_property
    def inverse_root_perm(self) -> tuple[int, ...]:
        out = [0] * len(self.root_perm)
        for k, j in enumerate(self.root_perm):
            out[j] = k
        return tuple(out)

    @cached_property
    def word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word (0-based simple indices)."""
        out = []
        w = self
        while True:
            ds = w.left_descents()
            if not ds:
                return tuple(out)
            i = ds[0]
            out.append(i)
            w = compose(reflect(self.datum, i), w)

    @property
    def word_1based(self) -> list[int]:
        return [i + 1 for i in self.word]


def _check_same(a: WeylElem, b: WeylElem) -> None:
    if a.datum is not b.datum and a.datum != b.datum:
        raise DatumMismatch("Weyl elements over different data")


def identity_elem(d: BasedRootDatum) -> WeylElem:
    I = identity(d.rank)
    return WeylElem(d, I, I)


@lru_cache(maxsize=None)
def _reflect_cached(d: BasedRootDatum, i: int) -> WeylElem:
    M, C = _reflection_matrices(d, i)
    return WeylElem(d, M, C)


def reflect(d: BasedRootDatum, i: int) -> WeylElem:
    """Simple reflection s_i (0-based index into the simple system)."""
    if not 0 <= i < len(d.simple):
        raise IndexError(f"simple index {i} out of range")
    return _reflect_cached(d, i)


def compose(w1: WeylElem, w2: WeylElem) -> WeylElem:
    """w1 * w2 (apply w2 first)."""
    _check_same(w1, w2)
    return WeylElem(
        w1.datum,
        mat_mul(w1.char_matrix, w2.char_matrix),
        mat_mul(w1.cochar_matrix, w2.cochar_matrix),
    )


def invert(w: WeylElem) -> WeylElem:
    out = identity_elem(w.datum)
    for i in w.word:  # (s_a s_b ... )^{-1} = ... s_b s_a
        out = compose(reflect(w.datum, i), out)
    return out


def from_word(d: BasedRootDatum, word: Iterable[int]) -> WeylElem:
    """Product s_{i1} s_{i2} ... of simple reflections (0-based indices)."""
    out = identity_elem(d)
    for i in word:
        out = compose(out, reflect(d, i))
    return out


def enumerate_group(d: BasedRootDatum, cap: int = DEFAULT_WEYL_CAP) -> list[WeylElem]:
    """All Weyl group elements, sorted by (length, canonical word)."""
    e = identity_elem(d)
    seen = {e: e}
    queue = deque([e])
    gens = [reflect(d, i) for i in range(len(d.simple))]
    while queue:
        w = queue.popleft()
        for s in gens:
            x = compose(w, s)
            if x not in seen:
                if len(seen) >= cap:
                    raise ValueError(f"Weyl group exceeds cap {cap}")
                seen[x] = x
                queue.append(x)
    return sorted(seen, key=lambda w: (w.length, w.word))


def reduced_words(w: WeylElem, limit: int | None = None) -> list[tuple[int, ...]]:
    """All reduced expressions of w, in lexicographic order."""
    d = w.datum

    @lru_cache(maxsize=None)
    def rec(m: Matrix) -> tuple[tuple[int, ...], ...]:
        x = _by_matrix[m]
        rd = x.right_descents()
        if not rd:
            return ((),)
        out = []
        for i in rd:
            y = compose(x, reflect(d, i))
            _by_matrix[y.char_matrix] = y
            out.extend(word + (i,) for word in rec(y.char_matrix))
        return tuple(out)

    _by_matrix = {w.char_matrix: w}
    words = sorted(set(rec(w.char_matrix)))
    return words[:limit] if limit is not None else words


def longest_element(d: BasedRootDatum) -> WeylElem:
    """w0: build by multiplying with simple reflections while length grows."""
    w = identity_elem(d)
    while True:
        for i in range(len(d.simple)):
            if i not in w.right_descents():
                w = compose(w, reflect(d, i))
                break
        else:
            return w


def reflection_for_root(d: BasedRootDatum, k: int) -> WeylElem:
    """s_alpha for the root with index k."""
    a, ac = d.roots[k], d.coroots[k]
    n = d.rank
    M = tuple(tuple(int(r == c) - a[r] * ac[c] for c in range(n)) for r in range(n))
    C = tuple(tuple(int(r == c) - ac[r] * a[c] for c in range(n)) for r in range(n))
    return WeylElem(d, M, C)


def from_char_matrix(d: BasedRootDatum, M: Sequence[Sequence[int]]) -> WeylElem:
    """Recover a Weyl element from its character-lattice matrix (validated via its word)."""
    M = tuple(tuple(int(x) for x in r) for r in M)
    from .lattice import int_inverse, transpose

    w = WeylElem(d, M, transpose(int_inverse(M)))
    w.root_perm  # raises KeyError if roots are not permuted
    if from_word(d, w.word).char_matrix != M:
        raise ValueError("matrix is not a Weyl group element")
    return w
