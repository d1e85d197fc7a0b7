"""Finite abelian duality: packet tables, Fourier inversion, relabellings, coinvariants.

A finite abelian group is Z/d_1 x ... x Z/d_k with elements stored as exponent
vectors. Characters are exponent vectors k with rho(s) = prod zeta_{d_i}^{k_i s_i};
values live in Q(zeta_L), L = lcm(d_i).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Sequence

from .check import Check
from .cyclotomic import Cyc, CycField
from .errors import InconclusiveBound, InvalidAutomorphism, LgkError
from .lattice import Matrix, identity, int_inverse, mat_mul, mat_pow, mat_sub, smith_normal_form
from .torus import KElem

Elem = tuple[int, ...]


class DimensionMismatch(LgkError, ValueError):
    pass


@dataclass(frozen=True)
class FinAbGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.factors):
            raise ValueError("factors must be positive")

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return lcm(*self.factors) if self.factors else 1

    @property
    def field(self) -> CycField:
        return CycField(self.exponent)

    def identity(self) -> Elem:
        return (0,) * len(self.factors)

    def mul(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def inv(self, a: Elem) -> Elem:
        return tuple((-x) % d for x, d in zip(a, self.factors))

    def elements(self) -> list[Elem]:
        return list(itertools.product(*(range(d) for d in self.factors)))

    def index(self, a: Elem) -> int:
        k = 0
        for x, d in zip(a, self.factors):
            k = k * d + x % d
        return k

    def characters(self) -> list["Character"]:
        return [Character(self, k) for k in self.elements()]


@dataclass(frozen=True)
class Character:
    group: FinAbGroup
    ks: Elem

    def exponent_at(self, s: Elem) -> int:
        """rho(s) = zeta_L^e."""
        L = self.group.exponent
        return sum(k * x * (L // d) for k, x, d in zip(self.ks, s, self.group.factors)) % L

    def __call__(self, s: Elem) -> Cyc:
        return self.group.field.zeta(self.exponent_at(s))

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.group, self.group.mul(self.ks, other.ks))

    def inverse(self) -> "Character":
        """The contragredient, which for a character is the inverse."""
        return Character(self.group, self.group.inv(self.ks))

    def compose(self, phi: "GroupAut") -> "Character":
        """s -> rho(phi(s))."""
        G = self.group
        L = G.exponent
        ks = []
        for j, dj in enumerate(G.factors):
            e = self.exponent_at(phi.image(tuple(int(i == j) for i in range(len(G.factors)))))
            ks.append((e // (L // dj)) % dj)
        return Character(G, tuple(ks))

    def order(self) -> int:
        return lcm(*(d // gcd(d, k) for k, d in zip(self.ks, self.group.factors))) if self.ks else 1


@dataclass(frozen=True)
class GroupAut:
    """Endomorphism s -> M s (mod factors); column j is the image of the j-th generator."""

    group: FinAbGroup
    matrix: Matrix

    def image(self, s: Elem) -> Elem:
        n = len(s)
        return tuple(sum(self.matrix[i][j] * s[j] for j in range(n)) % d for i, d in enumerate(self.group.factors))

    def check(self) -> Check:
        G = self.group
        for j, dj in enumerate(G.factors):
            col = tuple(self.matrix[i][j] for i in range(len(G.factors)))
            if G.index(tuple((dj * x) % d for x, d in zip(col, G.factors))) != 0:
                return Check(False, {"generator": j, "reason": "relation not preserved"})
        if len({self.image(s) for s in G.elements()}) != G.order:
            return Check(False, {"reason": "not bijective"})
        return Check(True, None)

    def table(self) -> dict[Elem, Elem]:
        return {s: self.image(s) for s in self.group.elements()}

    def inverse_table(self) -> dict[Elem, Elem]:
        return {v: k for k, v in self.table().items()}


def aut_compose(a: GroupAut, b: GroupAut) -> GroupAut:
    """s -> a(b(s))."""
    G = a.group
    n = len(G.factors)
    cols = [a.image(b.image(tuple(int(i == j) for i in range(n)))) for j in range(n)]
    return GroupAut(G, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


def aut_inverse(a: GroupAut) -> GroupAut:
    return _aut_from_table(a.group, a.inverse_table())


def inversion_aut(G: FinAbGroup) -> GroupAut:
    n = len(G.factors)
    return GroupAut(G, tuple(tuple(-int(i == j) for j in range(n)) for i in range(n)))


def identity_aut(G: FinAbGroup) -> GroupAut:
    return GroupAut(G, identity(len(G.factors)))


def _aut_from_table(G: FinAbGroup, table: dict[Elem, Elem]) -> GroupAut:
    n = len(G.factors)
    cols = [table[tuple(int(i == j) for i in range(n))] for j in range(n)]
    return GroupAut(G, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


# -- packet tables -----------------------------------------------------------------------


@dataclass(frozen=True)
class PacketTable:
    """Packet labels indexed by characters: labels[k] is the member attached to characters()[k]."""

    group: FinAbGroup
    labels: tuple[str, ...]
    _chars: tuple[Character, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_chars", tuple(self.group.characters()))
        if len(self.labels) != len(self._chars) or len(set(self.labels)) != len(self.labels):
            raise DimensionMismatch("labels must be in bijection with characters")

    @property
    def characters(self) -> tuple[Character, ...]:
        return self._chars

    def char_index(self, rho: Character) -> int:
        return self.group.index(rho.ks)

    def pairing(self) -> list[list[Cyc]]:
        """Rows s, columns rho: <s, rho> = rho(s)."""
        return [[rho(s) for rho in self._chars] for s in self.group.elements()]

    def label_of(self, rho: Character) -> str:
        return self.labels[self.char_index(rho)]

    def to_json(self) -> dict:
        L = self.group.exponent
        rows = [[KElem(rho.exponent_at(s), (), L).to_json() for rho in self._chars] for s in self.group.elements()]
        return {"factors": list(self.group.factors), "labels": list(self.labels), "pairing": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "PacketTable":
        t = cls(FinAbGroup(tuple(obj["factors"])), tuple(obj["labels"]))
        if "pairing" in obj:
            L = t.group.exponent
            expect = t.to_json()["pairing"]
            got = [[KElem.from_json(x, L).to_json() for x in row] for row in obj["pairing"]]
            if got != expect:
                raise DimensionMismatch("pairing is not the character table")
        return t


def check_orthogonality(t: PacketTable) -> Check:
    """sum_s <s,rho><s,rho'>^* = |A| delta, exactly."""
    G = t.group
    elems = G.elements()
    one = G.field.one()
    for a, rho in enumerate(t.characters):
        for b, rho2 in enumerate(t.characters):
            total = _zeta_sum(G.field, ((rho.exponent_at(s) - rho2.exponent_at(s), one) for s in elems))
            if total != G.field.rational(G.order if a == b else 0):
                return Check(False, {"rho": list(rho.ks), "rho2": list(rho2.ks)})
    return Check(True, None)


def _as_cyc(F: CycField, x) -> Cyc:
    if isinstance(x, Cyc):
        return x
    return F.rational(Fraction(x))


def _zeta_sum(F: CycField, terms) -> Cyc:
    """sum of zeta^e * v over (e, v) pairs, bucketing by e before reducing."""
    N = F.N
    buckets: dict[int, list] = {}
    for e, v in terms:
        b = buckets.setdefault(e % N, [0] * F.phi)
        for i, x in enumerate(v.c):
            if x:
                b[i] += x
    acc = [0] * F.phi
    for e, b in buckets.items():
        for i, x in enumerate(b):
            if x:
                for k, r in enumerate(F._red[(e + i) % N]):
                    if r:
                        acc[k] += x * r
    return Cyc(F, acc)


def fourier_invert(t: PacketTable, stable: Sequence) -> list[Cyc]:
    """Theta_rho = |A|^-1 sum_s conj(<s, rho>) STheta(s), indexed like t.characters."""
    G = t.group
    if len(stable) != G.order:
        raise DimensionMismatch(f"expected {G.order} stable values, got {len(stable)}")
    F = G.field
    vals = [_as_cyc(F, x) for x in stable]
    elems = G.elements()
    return [_zeta_sum(F, ((-rho.exponent_at(s), v) for s, v in zip(elems, vals))) / G.order for rho in t.characters]


def fourier_forward(t: PacketTable, theta: Sequence) -> list[Cyc]:
    """STheta(s) = sum_rho <s, rho> Theta_rho."""
    G = t.group
    if len(theta) != G.order:
        raise DimensionMismatch(f"expected {G.order} packet values, got {len(theta)}")
    F = G.field
    vals = [_as_cyc(F, x) for x in theta]
    return [_zeta_sum(F, ((rho.exponent_at(s), v) for rho, v in zip(t.characters, vals))) for s in G.elements()]


def _generic_vector(F: CycField, n: int) -> list[Cyc]:
    return [F.rational(k + 1) for k in range(n)]


def whittaker_shift(t: PacketTable, eta: Character) -> list[int]:
    """perm[k] = index of rho_k . eta^-1, checked by twisting stable values with eta and re-inverting."""
    G = t.group
    if eta.group != G:
        raise ValueError("character of a different group")
    perm = [t.char_index(rho * eta.inverse()) for rho in t.characters]
    theta = _generic_vector(G.field, G.order)
    stable = fourier_forward(t, theta)
    twisted = [_zeta_sum(G.field, [(eta.exponent_at(s), v)]) for s, v in zip(G.elements(), stable)]
    new = fourier_invert(t, twisted)
    if any(new[k] != theta[perm[k]] for k in range(G.order)):
        raise AssertionError("twisted inversion disagrees with rho -> rho eta^-1")
    return perm


def contragredient_shift(t: PacketTable, c: GroupAut, test_vectors: int = 2, seed: int = 0) -> list[int]:
    """perm[k] = index of rho_k^vee o c^-1.

    Verifies sum_s rho(s) V(c(s^-1)) == sum_s (rho^vee o c^-1)(s) V(s) for
    a few rational test vectors V.
    """
    G = t.group
    res = c.check()
    if not res:
        raise InvalidAutomorphism(f"not an automorphism: {res.witness}")
    cinv = aut_inverse(c)
    images = [rho.inverse().compose(cinv) for rho in t.characters]
    perm = [t.char_index(x) for x in images]
    F = G.field
    elems = G.elements()
    rng = random.Random(seed)
    for _ in range(test_vectors):
        V = {s: F.rational(Fraction(rng.randint(-9, 9), rng.randint(1, 5))) for s in elems}
        for rho, img in zip(t.characters, images):
            lhs = _zeta_sum(F, ((rho.exponent_at(s), V[c.image(G.inv(s))]) for s in elems))
            rhs = _zeta_sum(F, ((img.exponent_at(s), V[s]) for s in elems))
            if lhs != rhs:
                raise AssertionError(f"reindexing identity fails at {rho.ks}")
    return perm


def precompose_inverse_perm(t: PacketTable, c: GroupAut) -> list[int]:
    """perm[k] = index of rho_k o c^-1."""
    cinv = aut_inverse(c)
    return [t.char_index(rho.compose(cinv)) for rho in t.characters]


def compose_perms(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """(p after q)[k] = p[q[k]]."""
    return [p[q[k]] for k in range(len(q))]


def random_group(rng: random.Random, max_order: int = 64) -> FinAbGroup:
    factors = []
    n = 1
    while True:
        d = rng.randint(2, 8)
        if n * d > max_order or (factors and rng.random() < 0.35):
            break
        factors.append(d)
        n *= d
    return FinAbGroup(tuple(factors or [rng.randint(1, 8)]))


def random_table(rng: random.Random, max_order: int = 64) -> PacketTable:
    G = random_group(rng, max_order)
    labels = [f"pi{k}" for k in range(G.order)]
    rng.shuffle(labels)
    return PacketTable(G, tuple(labels))


def random_aut(rng: random.Random, G: FinAbGroup, tries: int = 200) -> GroupAut:
    n = len(G.factors)
    for _ in range(tries):
        M = tuple(tuple(rng.randrange(G.factors[i]) for j in range(n)) for i in range(n))
        phi = GroupAut(G, M)
        if phi.check():
            return phi
    return inversion_aut(G)


# -- lattice coinvariants ------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeAction:
    """Integer matrices of the generators of Gamma_f on Z^rank, with their orders."""

    rank: int
    generators: tuple[Matrix, ...]
    orders: tuple[int, ...]

    def check(self) -> Check:
        I = identity(self.rank)
        for k, (g, m) in enumerate(zip(self.generators, self.orders)):
            if len(g) != self.rank or any(len(r) != self.rank for r in g):
                return Check(False, {"generator": k, "reason": "shape"})
            if mat_pow(g, m) != I:
                return Check(False, {"generator": k, "reason": f"order is not {m}"})
        for a in self.generators:
            for b in self.generators:
                if mat_mul(a, b) != mat_mul(b, a):
                    return Check(False, {"reason": "generators do not commute"})
        return Check(True, None)


@dataclass(frozen=True)
class Coinvariants:
    torsion: tuple[int, ...]
    free_rank: int

    def to_json(self) -> dict:
        return {"torsion": list(self.torsion), "freeRank": self.free_rank}


def _stacked(L: LatticeAction) -> list[list[int]]:
    I = identity(L.rank)
    rows: list[list[int]] = []
    for g in L.generators:
        rows.extend(list(r) for r in mat_sub(g, I))
    return rows


def coinvariants(L: LatticeAction) -> Coinvariants:
    """X / span(sigma x - x) from the Smith form of the stacked (sigma - 1)."""
    rows = _stacked(L)
    if not rows:
        return Coinvariants((), L.rank)
    D, _, _ = smith_normal_form(rows)
    diag = [D[i][i] for i in range(min(len(D), L.rank)) if D[i][i]]
    return Coinvariants(tuple(d for d in diag if d > 1), L.rank - len(diag))


@dataclass(frozen=True)
class FixedTorusData:
    m: int
    points: int  # |Hom(X, mu_m)^Gamma|, also the number of its characters
    predicted: int  # m^free * prod gcd(d_i, m)
    components: int  # points / m^free
    coinvariants: Coinvariants

    @property
    def ok(self) -> bool:
        return self.points == self.predicted and self.components == prod(self.coinvariants.torsion)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "points": self.points,
            "predicted": self.predicted,
            "components": self.components,
            "coinvariants": self.coinvariants.to_json(),
        }


def fixed_torus_characters(L: LatticeAction, m: int) -> FixedTorusData:
    """Enumerate Gamma-fixed points of the torus with character lattice X at mu_m level.

    A point is t in Hom(X, Z/m), fixed when t(sigma x) = t(x) for all sigma.
    """
    co = coinvariants(L)
    bad = [d for d in co.torsion if m % d]
    if bad:
        raise InconclusiveBound(f"m = {m} is not divisible by invariant factors {bad}")
    rows = _stacked(L)
    count = 0
    for t in itertools.product(range(m), repeat=L.rank):
        # t is a row vector; t . (sigma - 1) = 0 mod m
        if all(sum(t[i] * rows[b * L.rank + i][j] for i in range(L.rank)) % m == 0
               for b in range(len(L.generators)) for j in range(L.rank)):
            count += 1
    predicted = m ** co.free_rank * prod(gcd(d, m) for d in co.torsion)
    return FixedTorusData(m, count, predicted, count // m ** co.free_rank, co)


# Finite order blocks for random actions: (block, order of the block).
_BLOCKS = {
    2: [((1,),), ((-1,),), ((0, 1), (1, 0))],
    3: [((1,),), ((0, -1), (1, -1)), ((0, 0, 1), (1, 0, 0), (0, 1, 0))],
}


def random_lattice_action(rng: random.Random, order: int, max_rank: int = 3) -> LatticeAction:
    """A random Z/order action of rank <= max_rank: blocks conjugated by a random unimodular matrix."""
    rank = rng.randint(1, max_rank)
    blocks = []
    size = 0
    while size < rank:
        fits = [b for b in _BLOCKS[order] if size + len(b) <= rank]
        b = rng.choice(fits)
        blocks.append(b)
        size += len(b)
    M = [[0] * rank for _ in range(rank)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                M[off + i][off + j] = x
        off += len(b)
    P = [list(r) for r in identity(rank)]
    for _ in range(rng.randint(0, 4)):
        i, j = rng.sample(range(rank), 2) if rank > 1 else (0, 0)
        if i != j:
            k = rng.choice([-2, -1, 1, 2])
            P[i] = [a + k * c for a, c in zip(P[i], P[j])]
    Pm = tuple(tuple(r) for r in P)
    g = mat_mul(Pm, mat_mul(tuple(tuple(r) for r in M), int_inverse(Pm)))
    return LatticeAction(rank, (g,), (order,))


def sufficient_level(L: LatticeAction, extra: int = 1) -> int:
    """lcm of the torsion invariant factors, times ``extra``."""
    co = coinvariants(L)
    return (lcm(*co.torsion) if co.torsion else 1) * extra


def check_fixed_torus(L: LatticeAction, m: int) -> Check:
    data = fixed_torus_characters(L, m)
    return Check(data.ok, data.to_json())
