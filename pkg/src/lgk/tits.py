"""Symbolic model of the torus normalizer N(T): pairs (t, w) standing for t . n(w).

n(w) is the Tits section attached to the pinning: n(s_i) is the image of
((0, 1), (-1, 0)) under the SL2 attached to alpha_i, and n(w) is the product
along any reduced word. Products are normalized using only

    n(w) n(s_i) = n(w s_i)                      if l(w s_i) > l(w)
    n(w') n(s_i)^2 = w'(alpha_i^vee(-1)) n(w')  (n(s_i)^2 = alpha_i^vee(-1)).

The matrix models certify these rules independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .check import Check
from .errors import DatumMismatch, InvalidScaling
from .rootdatum import BasedRootDatum, rho_check_double
from .torus import CoeffGroup, KElem, TorusPoint, eval_cocharacter, identity_point
from .weyl import WeylElem, compose, identity_elem, invert, reflect


@dataclass(frozen=True)
class ExtWeylElem:
    """t . n(w)."""

    t: TorusPoint
    w: WeylElem

    @property
    def datum(self) -> BasedRootDatum:
        return self.w.datum

    def __mul__(self, other: "ExtWeylElem") -> "ExtWeylElem":
        return ext_mul(self, other)

    def inverse(self) -> "ExtWeylElem":
        return ext_inverse(self)

    def conj_torus(self, s: TorusPoint) -> TorusPoint:
        """Ad(t n(w)) on the torus: s -> w(s)."""
        return s.weyl_act(self.w)

    def is_identity(self) -> bool:
        return self.t.is_identity() and self.w.is_identity()

    def to_json(self) -> dict:
        return {"torus": self.t.to_json(), "word": self.w.word_1based}

    def __repr__(self) -> str:
        return f"({self.t!r}, n{self.w.word_1based})"


def _minus_one(N: int) -> KElem:
    return KElem(N // 2, (), N)


def tits_section(w: WeylElem, N: int) -> ExtWeylElem:
    return ExtWeylElem(identity_point(w.datum, N), w)


def torus_elem(t: TorusPoint) -> ExtWeylElem:
    return ExtWeylElem(t, identity_elem(t.datum))


def generator(d: BasedRootDatum, i: int, N: int) -> ExtWeylElem:
    return tits_section(reflect(d, i), N)


def _times_section_generator(acc: TorusPoint, w: WeylElem, i: int) -> tuple[TorusPoint, WeylElem]:
    """(acc . n(w)) . n(s_i) in normal form."""
    d = w.datum
    ws = compose(w, reflect(d, i))
    if ws.length > w.length:
        return acc, ws
    # w = ws . s_i, so n(w) n(s_i) = n(ws) n(s_i)^2 = ws(alpha_i^vee(-1)) n(ws)
    sq = eval_cocharacter(d, d.coroots[d.simple[i]], _minus_one(acc.N))
    return acc * sq.weyl_act(ws), ws


def section_product(w1: WeylElem, w2: WeylElem, N: int) -> ExtWeylElem:
    """n(w1) n(w2) in normal form."""
    acc, w = identity_point(w1.datum, N), w1
    for i in w2.word:
        acc, w = _times_section_generator(acc, w, i)
    return ExtWeylElem(acc, w)


def ext_mul(a: ExtWeylElem, b: ExtWeylElem) -> ExtWeylElem:
    if a.datum is not b.datum and a.datum != b.datum:
        raise DatumMismatch("extended Weyl elements over different data")
    prod = section_product(a.w, b.w, a.t.N)
    return ExtWeylElem(a.t * b.t.weyl_act(a.w) * prod.t, prod.w)


def ext_inverse(a: ExtWeylElem) -> ExtWeylElem:
    winv = invert(a.w)
    tau = section_product(a.w, winv, a.t.N).t  # n(w) n(w^-1) = tau
    return ExtWeylElem((a.t * tau).inverse().weyl_act(winv), winv)


def word_product(d: BasedRootDatum, word: Iterable[int], N: int) -> ExtWeylElem:
    """n(s_{i1}) n(s_{i2}) ... for an arbitrary (not necessarily reduced) word."""
    acc, w = identity_point(d, N), identity_elem(d)
    for i in word:
        acc, w = _times_section_generator(acc, w, i)
    return ExtWeylElem(acc, w)


def ext_power(a: ExtWeylElem, k: int) -> ExtWeylElem:
    out = torus_elem(identity_point(a.datum, a.t.N))
    base = a if k >= 0 else ext_inverse(a)
    for _ in range(abs(k)):
        out = ext_mul(out, base)
    return out


# -- rescaled pinnings ------------------------------------------------------------

LEFT = "left"
LITERAL = "literal"


def check_scaling(d: BasedRootDatum, c: Mapping[int, KElem] | Sequence[KElem]) -> None:
    """Raise InvalidScaling unless c is constant on Weyl orbits of roots."""
    for k in range(len(d.roots)):
        for perm in d.simple_reflection_perms:
            if c[perm[k]] != c[k]:
                raise InvalidScaling(f"c differs on roots {k} and {perm[k]}")


def scaling_support(w: WeylElem, convention: str = LEFT) -> list[int]:
    """Positive roots entering the rescaling product for n(w).

    ``left``: alpha > 0 with w^{-1} alpha < 0, which is what multiplying the
    rescaled simple sections along a reduced word produces.
    ``literal``: alpha > 0 with w alpha < 0.
    """
    if convention == LEFT:
        return sorted(invert(w).inversion_set)
    if convention == LITERAL:
        return sorted(w.inversion_set)
    raise ValueError(f"unknown convention {convention!r}")


def coroot_product(d: BasedRootDatum, roots: Iterable[int], values: Mapping[int, KElem] | Sequence[KElem], N: int) -> TorusPoint:
    """prod alpha^vee(values[alpha]) over the given root indices."""
    acc = identity_point(d, N)
    for k in roots:
        acc = acc * eval_cocharacter(d, d.coroots[k], values[k])
    return acc


def rescaled_section(c, w: WeylElem, N: int, convention: str = LEFT, check: bool = True) -> ExtWeylElem:
    """Tits section of the pinning rescaled by c, via the closed product formula."""
    if check:
        check_scaling(w.datum, c)
    t = coroot_product(w.datum, scaling_support(w, convention), c, N)
    return ExtWeylElem(t, w)


def rescaled_section_from_generators(c, w: WeylElem, N: int, word: Sequence[int] | None = None) -> ExtWeylElem:
    """Multiply alpha_i^vee(c_{alpha_i}) n(s_i) along a reduced word of w."""
    d = w.datum
    out = torus_elem(identity_point(d, N))
    for i in (w.word if word is None else word):
        s = d.simple[i]
        gen = ExtWeylElem(eval_cocharacter(d, d.coroots[s], c[s]), reflect(d, i))
        out = ext_mul(out, gen)
    return out


# -- the element t and the inverse-section identity -------------------------------


def t_element(d: BasedRootDatum, K: CoeffGroup | int, sign: int = 1) -> TorusPoint:
    """prod_{alpha > 0} alpha^vee(i) = (2 rho^vee)(i); ``sign=-1`` uses the root -i."""
    N = K.N if isinstance(K, CoeffGroup) else int(K)
    if N % 4:
        raise ValueError("need 4 | N for a square root of -1")
    i = KElem((N // 4) * (1 if sign > 0 else 3), (), N)
    return eval_cocharacter(d, rho_check_double(d), i)


def inverse_section_identity(w: WeylElem, N: int, sign: int = 1) -> tuple[ExtWeylElem, ExtWeylElem]:
    """Both sides of n(w^{-1})^{-1} = [t . w(t)^{-1}] n(w)."""
    t = t_element(w.datum, N, sign)
    lhs = ext_inverse(tits_section(invert(w), N))
    rhs = ExtWeylElem(t * t.weyl_act(w).inverse(), w)
    return lhs, rhs


def inverse_section_identity_check(ws: Iterable[WeylElem], N: int, sign: int = 1) -> Check:
    for w in ws:
        lhs, rhs = inverse_section_identity(w, N, sign)
        if lhs != rhs:
            return Check(False, {"word": w.word_1based, "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return Check(True, None)
