"""The coefficient group K = mu_N x Z^(symbols) and torus points X_* (x) K.

K is a formal multiplicative abelian group: an element is zeta_N^k times a
monomial in named free generators. A cyclic group Gamma_f = Z/m acts on K
through a generator that raises roots of unity to a unit power and permutes
the free generators up to roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Mapping, Sequence

from .errors import DatumMismatch, UnassignedSymbol
from .lattice import Matrix, dot, mat_mul, mat_pow
from .rootdatum import BasedRootDatum, PinnedAutomorphism
from .weyl import WeylElem, from_char_matrix, identity_elem

DEFAULT_N = 24


@dataclass(frozen=True, order=True)
class KElem:
    """zeta_N^zeta * prod(symbol^exp)."""

    zeta: int
    free: tuple[tuple[str, int], ...] = ()
    N: int = DEFAULT_N

    def __post_init__(self):
        object.__setattr__(self, "zeta", self.zeta % self.N)
        if self.free and (any(e == 0 for _, e in self.free) or list(self.free) != sorted(self.free)):
            acc: dict[str, int] = {}
            for s, e in self.free:
                acc[s] = acc.get(s, 0) + e
            object.__setattr__(self, "free", tuple(sorted((s, e) for s, e in acc.items() if e)))

    def __mul__(self, other: "KElem") -> "KElem":
        if self.N != other.N:
            raise ValueError("K elements with different cyclotomic orders")
        if not other.free:
            free = self.free
        elif not self.free:
            free = other.free
        else:
            acc = dict(self.free)
            for s, e in other.free:
                acc[s] = acc.get(s, 0) + e
            free = tuple(sorted((s, e) for s, e in acc.items() if e))
        return KElem(self.zeta + other.zeta, free, self.N)

    def inverse(self) -> "KElem":
        return KElem(-self.zeta, tuple((s, -e) for s, e in self.free), self.N)

    def __truediv__(self, other: "KElem") -> "KElem":
        return self * other.inverse()

    def __pow__(self, k: int) -> "KElem":
        if k == 0:
            return KElem(0, (), self.N)
        return KElem(self.zeta * k, tuple((s, e * k) for s, e in self.free), self.N)

    def is_one(self) -> bool:
        return self.zeta == 0 and not self.free

    def is_root_of_unity(self) -> bool:
        return not self.free

    def order(self) -> int | None:
        """Multiplicative order, or None if a free generator occurs."""
        if self.free:
            return None
        return self.N // gcd(self.N, self.zeta)

    def to_json(self) -> dict:
        return {"zeta": self.zeta, "free": {s: e for s, e in self.free}}

    @classmethod
    def from_json(cls, obj: Mapping, N: int = DEFAULT_N) -> "KElem":
        free = tuple(sorted((str(s), int(e)) for s, e in obj.get("free", {}).items() if e))
        return cls(int(obj.get("zeta", 0)), free, N)

    def __repr__(self) -> str:
        parts = []
        if self.zeta or not self.free:
            parts.append(f"z{self.N}^{self.zeta}")
        parts += [f"{s}^{e}" if e != 1 else s for s, e in self.free]
        return "*".join(parts)


@dataclass(frozen=True)
class CoeffGroup:
    """K together with an action of Z/order.

    The generator sends zeta to zeta^unit and each symbol ``s`` to
    ``zeta^k * s'`` where ``symbol_map[s] = (s', k)``; unlisted symbols are fixed.
    """

    N: int = DEFAULT_N
    symbols: tuple[str, ...] = ()
    order: int = 1
    unit: int = 1
    symbol_map: tuple[tuple[str, tuple[str, int]], ...] = ()

    def __post_init__(self):
        if self.N % 2:
            raise ValueError("cyclotomic order N must be even")
        if gcd(self.unit, self.N) != 1:
            raise ValueError("unit must be invertible mod N")
        object.__setattr__(self, "symbols", tuple(sorted(set(self.symbols))))
        for s, (t, _) in self.symbol_map:
            if s not in self.symbols or t not in self.symbols:
                raise ValueError(f"symbol map mentions unknown symbol {s} or {t}")

    # -- distinguished elements ----------------------------------------------

    def one(self) -> KElem:
        return KElem(0, (), self.N)

    def zeta(self, k: int = 1) -> KElem:
        return KElem(k, (), self.N)

    @property
    def minus_one(self) -> KElem:
        return KElem(self.N // 2, (), self.N)

    @property
    def i(self) -> KElem:
        if self.N % 4:
            raise ValueError("a square root of -1 needs 4 | N")
        return KElem(self.N // 4, (), self.N)

    def symbol(self, name: str, exp: int = 1) -> KElem:
        if name not in self.symbols:
            raise UnassignedSymbol(name)
        return KElem(0, ((name, exp),) if exp else (), self.N)

    # -- Galois action ---------------------------------------------------------

    @cached_property
    def _smap(self) -> dict[str, tuple[str, int]]:
        return dict(self.symbol_map)

    def act_generator(self, x: KElem) -> KElem:
        out = KElem(x.zeta * self.unit, (), self.N)
        for s, e in x.free:
            t, k = self._smap.get(s, (s, 0))
            out = out * KElem(k * e, ((t, e),), self.N)
        return out

    def act(self, j: int, x: KElem) -> KElem:
        """Action of sigma^j."""
        for _ in range(j % self.order):
            x = self.act_generator(x)
        return x

    def check(self) -> None:
        """The generator must have order dividing ``order`` on K."""
        probes = [self.zeta(1)] + [self.symbol(s) for s in self.symbols]
        for x in probes:
            y = x
            for _ in range(self.order):
                y = self.act_generator(y)
            if y != x:
                raise ValueError(f"generator^{self.order} moves {x}")

    def with_symbols(self, *names: str) -> "CoeffGroup":
        return CoeffGroup(self.N, tuple(set(self.symbols) | set(names)), self.order, self.unit, self.symbol_map)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "symbols": list(self.symbols),
            "order": self.order,
            "unit": self.unit,
            "symbolMap": {s: [t, k] for s, (t, k) in self.symbol_map},
        }


# -- torus points ---------------------------------------------------------------


@dataclass(frozen=True)
class TorusPoint:
    """Point of the torus X_*(T) (x) K, stored in the cocharacter basis."""

    datum: BasedRootDatum = field(repr=False, compare=False)
    coords: tuple[KElem, ...]

    def __mul__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(self.datum, tuple(a * b for a, b in zip(self.coords, other.coords)))

    def inverse(self) -> "TorusPoint":
        return TorusPoint(self.datum, tuple(a.inverse() for a in self.coords))

    def __truediv__(self, other: "TorusPoint") -> "TorusPoint":
        return self * other.inverse()

    def __pow__(self, k: int) -> "TorusPoint":
        return TorusPoint(self.datum, tuple(a ** k for a in self.coords))

    def is_identity(self) -> bool:
        return all(a.is_one() for a in self.coords)

    @property
    def N(self) -> int:
        return self.coords[0].N if self.coords else DEFAULT_N

    def map_lattice(self, C: Matrix) -> "TorusPoint":
        """Apply the torus endomorphism whose cocharacter matrix is ``C``."""
        n = len(self.coords)
        out = []
        for j in range(n):
            acc = KElem(0, (), self.N)
            for k in range(n):
                if C[j][k]:
                    acc = acc * self.coords[k] ** C[j][k]
            out.append(acc)
        return TorusPoint(self.datum, tuple(out))

    def weyl_act(self, w: WeylElem) -> "TorusPoint":
        return self.map_lattice(w.cochar_matrix)

    def auto_act(self, theta: PinnedAutomorphism) -> "TorusPoint":
        return self.map_lattice(theta.cochar_matrix)

    def coeff_act(self, K: CoeffGroup, j: int) -> "TorusPoint":
        return TorusPoint(self.datum, tuple(K.act(j, a) for a in self.coords))

    def symbols(self) -> set[str]:
        return {s for a in self.coords for s, _ in a.free}

    def to_json(self) -> list[dict]:
        return [a.to_json() for a in self.coords]

    def __repr__(self) -> str:
        return f"T({', '.join(map(repr, self.coords))})"


def identity_point(d: BasedRootDatum, N: int = DEFAULT_N) -> TorusPoint:
    return TorusPoint(d, tuple(KElem(0, (), N) for _ in range(d.rank)))


def eval_cocharacter(d: BasedRootDatum, mu: Sequence[int], x: KElem) -> TorusPoint:
    """mu(x) for a cocharacter mu."""
    if len(mu) != d.rank:
        raise DatumMismatch("cocharacter of wrong rank")
    return TorusPoint(d, tuple(x ** m for m in mu))


def eval_root(alpha: Sequence[int], t: TorusPoint) -> KElem:
    """alpha(t) for a character alpha."""
    acc = KElem(0, (), t.N)
    for a, x in zip(alpha, t.coords):
        if a:
            acc = acc * x ** a
    return acc


def galois_act(K: CoeffGroup, j: int, t: TorusPoint, twist: WeylElem | None = None) -> TorusPoint:
    """Coefficient action of sigma^j followed by the lattice action of ``twist``."""
    out = t.coeff_act(K, j)
    return out.weyl_act(twist) if twist is not None else out


# -- twisted tori -----------------------------------------------------------------


@dataclass(frozen=True)
class TwistedTorusDatum:
    """The torus T with Gamma_f = Z/m acting through w_S(sigma) composed with theta.

    The generator sigma acts on X_*(T) by ``w_gen . theta``; ``w_S(sigma^k)``
    is the Weyl element ``(w_gen theta)^k theta^{-k}``, which satisfies the
    twisted cocycle rule ``w_S(st) = w_S(s) . s(w_S(t))`` for the action of
    Gamma_f on W by conjugation with theta.
    """

    datum: BasedRootDatum
    K: CoeffGroup
    w_gen: WeylElem
    theta: PinnedAutomorphism | None = None

    @property
    def order(self) -> int:
        return self.K.order

    @cached_property
    def theta_char(self) -> Matrix:
        return self.theta.char_matrix if self.theta is not None else _eye(self.datum.rank)

    @cached_property
    def theta_cochar(self) -> Matrix:
        return self.theta.cochar_matrix if self.theta is not None else _eye(self.datum.rank)

    @cached_property
    def gen_char(self) -> Matrix:
        return mat_mul(self.w_gen.char_matrix, self.theta_char)

    @cached_property
    def gen_cochar(self) -> Matrix:
        return mat_mul(self.w_gen.cochar_matrix, self.theta_cochar)

    def w_S(self, k: int) -> WeylElem:
        k %= self.order
        M = mat_mul(mat_pow(self.gen_char, k), mat_pow(self.theta_char, -k))
        return from_char_matrix(self.datum, M)

    def theta_power_char(self, k: int) -> Matrix:
        return mat_pow(self.theta_char, k % self.order)

    def act_root(self, k: int, r: int) -> int:
        """Index of sigma^k applied to root index r."""
        x = self.datum.roots[r]
        M = mat_pow(self.gen_char, k % self.order)
        return self.datum.index[tuple(dot(row, x) for row in M)]

    def act_point(self, k: int, t: TorusPoint) -> TorusPoint:
        """sigma^k on S(K): coefficient action then the lattice action."""
        return t.coeff_act(self.K, k).map_lattice(mat_pow(self.gen_cochar, k % self.order))

    def check(self) -> None:
        self.K.check()
        m = self.order
        I = _eye(self.datum.rank)
        if mat_pow(self.gen_char, m) != I:
            raise ValueError("generator lattice action does not have order dividing m")
        if mat_pow(self.theta_char, m) != I:
            raise ValueError("theta order does not divide m")
        for a in range(m):
            for b in range(m):
                lhs = self.w_S(a + b)
                # sigma^a(w) = theta^a w theta^-a
                rhs_c = mat_mul(
                    self.w_S(a).char_matrix,
                    mat_mul(mat_pow(self.theta_char, a), mat_mul(self.w_S(b).char_matrix, mat_pow(self.theta_char, -a))),
                )
                if lhs.char_matrix != rhs_c:
                    raise ValueError(f"cocycle condition fails at ({a}, {b})")

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "wGen": self.w_gen.word_1based,
            "theta": list(self.theta.perm) if self.theta is not None else None,
            "coeff": self.K.to_json(),
        }


def _eye(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def trivial_twist(d: BasedRootDatum, K: CoeffGroup | None = None) -> TwistedTorusDatum:
    return TwistedTorusDatum(d, K or CoeffGroup(), identity_elem(d), None)
