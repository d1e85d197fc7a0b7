"""a-data, chi-data and scaling vectors on a twisted root system, and theta-orbit types.

Roots are indexed as in the underlying datum. Gamma_f = Z/m acts on roots
through the twisted torus (w_S(sigma) composed with theta) and on values
through the coefficient group K.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .check import Check
from .errors import InvalidData, InvalidScaling
from .rootdatum import BasedRootDatum, PinnedAutomorphism
from .torus import KElem, TwistedTorusDatum

# A generator of the symmetry group of the data: (root permutation, value map).
_Gen = tuple[Sequence[int], Callable]


def _propagate(n_roots: int, gens: Sequence[_Gen], seeds: dict[int, object]) -> list | None:
    """Extend seed values along the generators; None on an inconsistency."""
    vals: list = [None] * n_roots
    stack = []
    for r, v in seeds.items():
        vals[r] = v
        stack.append(r)
    while stack:
        r = stack.pop()
        for perm, f in gens:
            r2, v2 = perm[r], f(vals[r])
            if vals[r2] is None:
                vals[r2] = v2
                stack.append(r2)
            elif vals[r2] != v2:
                return None
    return vals


def _orbit_reps(n_roots: int, perms: Iterable[Sequence[int]]) -> list[int]:
    perms = list(perms)
    seen = [False] * n_roots
    reps = []
    for r in range(n_roots):
        if seen[r]:
            continue
        reps.append(r)
        stack = [r]
        seen[r] = True
        while stack:
            x = stack.pop()
            for p in perms:
                if not seen[p[x]]:
                    seen[p[x]] = True
                    stack.append(p[x])
    return reps


def _sigma_perm(S: TwistedTorusDatum) -> tuple[int, ...]:
    return tuple(S.act_root(1, r) for r in range(len(S.datum.roots)))


def _neg_perm(d: BasedRootDatum) -> tuple[int, ...]:
    return tuple(d.negative_index(r) for r in range(len(d.roots)))


# -- a-data -----------------------------------------------------------------------


@dataclass(frozen=True)
class AData:
    S: TwistedTorusDatum
    values: tuple[KElem, ...]

    def __getitem__(self, r: int) -> KElem:
        return self.values[r]

    def to_json(self) -> dict:
        return {str(r): v.to_json() for r, v in enumerate(self.values)}


def _a_gens(S: TwistedTorusDatum, theta: PinnedAutomorphism | None = None) -> list[_Gen]:
    K = S.K
    m1 = K.minus_one
    gens: list[_Gen] = [
        (_sigma_perm(S), K.act_generator),
        (_neg_perm(S.datum), lambda x: x * m1),
    ]
    if theta is not None:
        gens.append((theta.root_perm, lambda x: x))
    return gens


def check_adata(A: AData, theta: PinnedAutomorphism | None = None) -> Check:
    """a_{sigma alpha} = sigma(a_alpha), a_{-alpha} = -a_alpha, optionally a_{theta alpha} = a_alpha."""
    for r, v in enumerate(A.values):
        for perm, f in _a_gens(A.S, theta):
            if A.values[perm[r]] != f(v):
                return Check(False, {"root": r, "image": perm[r]})
    return Check(True, None)


def validate_adata(A: AData, theta: PinnedAutomorphism | None = None) -> AData:
    res = check_adata(A, theta)
    if not res:
        raise InvalidData(f"invalid a-data at {res.witness}")
    return A


def negate_a(A: AData) -> AData:
    m1 = A.S.K.minus_one
    return AData(A.S, tuple(v * m1 for v in A.values))


def scale_a(c: "ScalingVector", A: AData) -> AData:
    check_scaling_vector(c)
    return AData(A.S, tuple(x * y for x, y in zip(c.values, A.values)))


def random_adata(
    S: TwistedTorusDatum,
    rng: random.Random,
    theta: PinnedAutomorphism | None = None,
    symbols: Sequence[str] = (),
    tries: int = 200,
) -> AData:
    """Random valid a-data: pick a value per orbit and propagate."""
    K = S.K
    n = len(S.datum.roots)
    gens = _a_gens(S, theta)
    vals: list = [None] * n
    for rep in _orbit_reps(n, [g[0] for g in gens]):
        for _ in range(tries):
            v = K.zeta(rng.randrange(K.N))
            if symbols and rng.random() < 0.7:
                v = v * K.symbol(rng.choice(list(symbols)), rng.choice([1, 1, 2, -1]))
            filled = _propagate(n, gens, {rep: v})
            if filled is not None:
                for r, x in enumerate(filled):
                    if x is not None:
                        vals[r] = x
                break
        else:
            raise InvalidData(f"no consistent a-value found for root {rep}")
    return validate_adata(AData(S, tuple(vals)), theta)


# -- chi-data -----------------------------------------------------------------------


@dataclass(frozen=True)
class ChiData:
    """chi_alpha: Z/d -> K, 1 -> zeta_N^(k_alpha * N/d); transport multiplies by ``transport``."""

    S: TwistedTorusDatum
    d: int
    ks: tuple[int, ...]
    transport: int = 1

    def value(self, r: int, x: int) -> KElem:
        N = self.S.K.N
        return KElem(self.ks[r] * x * (N // self.d), (), N)

    def order(self, r: int) -> int:
        from math import gcd

        return self.d // gcd(self.d, self.ks[r])

    def to_json(self) -> dict:
        return {"d": self.d, "transport": self.transport, "k": list(self.ks)}


def _chi_gens(S: TwistedTorusDatum, d: int, transport: int) -> list[_Gen]:
    return [
        (_sigma_perm(S), lambda k: (k * transport) % d),
        (_neg_perm(S.datum), lambda k: (-k) % d),
    ]


def check_chidata(X: ChiData) -> Check:
    if X.S.K.N % X.d:
        return Check(False, "d must divide N")
    for r, k in enumerate(X.ks):
        for perm, f in _chi_gens(X.S, X.d, X.transport):
            if X.ks[perm[r]] % X.d != f(k):
                return Check(False, {"root": r, "image": perm[r]})
    return Check(True, None)


def validate_chidata(X: ChiData) -> ChiData:
    res = check_chidata(X)
    if not res:
        raise InvalidData(f"invalid chi-data at {res.witness}")
    return X


def negate_x(X: ChiData) -> ChiData:
    return ChiData(X.S, X.d, tuple((-k) % X.d for k in X.ks), X.transport)


def random_chidata(S: TwistedTorusDatum, d: int, rng: random.Random, transport: int = 1, tries: int = 100) -> ChiData:
    n = len(S.datum.roots)
    gens = _chi_gens(S, d, transport)
    ks: list = [None] * n
    for rep in _orbit_reps(n, [g[0] for g in gens]):
        for _ in range(tries):
            filled = _propagate(n, gens, {rep: rng.randrange(d)})
            if filled is not None:
                for r, x in enumerate(filled):
                    if x is not None:
                        ks[r] = x
                break
        else:
            raise InvalidData(f"no consistent chi-value for root {rep}")
    return validate_chidata(ChiData(S, d, tuple(ks), transport))


# -- scaling vectors -------------------------------------------------------------------


@dataclass(frozen=True)
class ScalingVector:
    S: TwistedTorusDatum
    values: tuple[KElem, ...]

    def __getitem__(self, r: int) -> KElem:
        return self.values[r]

    def __len__(self) -> int:
        return len(self.values)

    def __mul__(self, other: "ScalingVector") -> "ScalingVector":
        return ScalingVector(self.S, tuple(a * b for a, b in zip(self.values, other.values)))

    def to_json(self) -> dict:
        return {str(r): v.to_json() for r, v in enumerate(self.values)}


def check_scaling_vector(c: ScalingVector) -> None:
    d = c.S.datum
    for r in range(len(d.roots)):
        for perm in d.simple_reflection_perms:
            if c.values[perm[r]] != c.values[r]:
                raise InvalidScaling(f"not Weyl invariant at roots {r}, {perm[r]}")
        if c.values[c.S.act_root(1, r)] != c.S.K.act_generator(c.values[r]):
            raise InvalidScaling(f"not Galois equivariant at root {r}")


def unit_scaling(S: TwistedTorusDatum) -> ScalingVector:
    return ScalingVector(S, tuple(S.K.one() for _ in S.datum.roots))


def constant_scaling(S: TwistedTorusDatum, x: KElem) -> ScalingVector:
    c = ScalingVector(S, tuple(x for _ in S.datum.roots))
    check_scaling_vector(c)
    return c


def random_scaling(S: TwistedTorusDatum, rng: random.Random, symbols: Sequence[str] = (), tries: int = 200) -> ScalingVector:
    """Random invariant scaling: one Gamma-fixed value per Weyl orbit (root length)."""
    d = S.datum
    K = S.K
    n = len(d.roots)
    gens: list[_Gen] = [(p, lambda x: x) for p in d.simple_reflection_perms]
    gens.append((_sigma_perm(S), K.act_generator))
    vals: list = [None] * n
    for rep in _orbit_reps(n, [g[0] for g in gens]):
        for _ in range(tries):
            v = K.zeta(rng.randrange(K.N))
            if symbols and rng.random() < 0.7:
                v = v * K.symbol(rng.choice(list(symbols)), rng.choice([1, 2, -1]))
            filled = _propagate(n, gens, {rep: v})
            if filled is not None:
                for r, x in enumerate(filled):
                    if x is not None:
                        vals[r] = x
                break
        else:
            raise InvalidScaling(f"no invariant value found for root {rep}")
    c = ScalingVector(S, tuple(vals))
    check_scaling_vector(c)
    return c


# -- theta orbits -------------------------------------------------------------------------

R1 = "R1"
R2 = "R2"
R3 = "R3"


def theta_orbits(
    d: BasedRootDatum,
    theta: PinnedAutomorphism,
    roots: Iterable[int] | None = None,
    r3: Callable[[tuple[int, ...], BasedRootDatum], bool] | None = None,
) -> list[tuple[tuple[int, ...], str]]:
    """<theta>-orbits on a theta-stable set of roots, labelled by type.

    R2 if two members of the orbit sum to a root, else R1. An optional
    predicate ``r3`` overrides both when it returns True.
    """
    roots = sorted(roots) if roots is not None else list(range(len(d.roots)))
    rootset = set(roots)
    perm = theta.root_perm
    seen = set()
    out = []
    for r in roots:
        if r in seen:
            continue
        orbit = [r]
        x = perm[r]
        while x != r:
            if x not in rootset:
                raise ValueError("root set is not theta-stable")
            orbit.append(x)
            x = perm[x]
        seen.update(orbit)
        out.append((tuple(sorted(orbit)), orbit_type(d, orbit, r3)))
    return out


def orbit_type(d: BasedRootDatum, orbit: Sequence[int], r3=None) -> str:
    if r3 is not None and r3(tuple(orbit), d):
        return R3
    for a in orbit:
        for b in orbit:
            if a < b:
                s = tuple(x + y for x, y in zip(d.roots[a], d.roots[b]))
                if s in d.index:
                    return R2
    return R1


def minus_one_preserves_orbits(d: BasedRootDatum, theta: PinnedAutomorphism, r3=None) -> Check:
    """Negation maps each theta-orbit onto a theta-orbit of the same type."""
    orbits = dict(theta_orbits(d, theta, r3=r3))
    for orbit, label in orbits.items():
        neg = tuple(sorted(d.negative_index(r) for r in orbit))
        if neg not in orbits:
            return Check(False, {"orbit": list(orbit), "reason": "image is not an orbit"})
        if orbits[neg] != label:
            return Check(False, {"orbit": list(orbit), "reason": f"type {label} -> {orbits[neg]}"})
    return Check(True, None)
