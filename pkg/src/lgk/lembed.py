"""Finite models of L-embeddings S^ x| Gamma_f -> G^ x| Gamma_f and their behaviour under C.

The dual torus S^ is T^ as an abstract group, with sigma acting only through
the lattice map w_S(sigma) theta^. An r-cochain r: Gamma_f -> T^ gives

    L(s, sigma^j) = (s . r(j) . n(w_S(sigma^j)), sigma^j)

which must be a group homomorphism; this is checked exhaustively on
generators. The identity to verify is

    ^LC . L_X = Ad(t) . L_{-X} . (-1),   with r_{-X} = r_X^{-1} pointwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .check import Check
from .chevalley import ChevalleyInvolution, build_chevalley
from .chidata import ChiData, negate_x
from .cyclotomic import cmat_eq, cmat_inverse, cmat_mul
from .errors import InvalidRCochain
from .lattice import mat_mul, mat_pow
from .models import MatrixGroupModel, realize
from .chevalley import pinned_lie_matrix
from .tits import ExtWeylElem, ext_mul, t_element, tits_section, torus_elem
from .torus import KElem, TorusPoint, TwistedTorusDatum, identity_point
from .weyl import from_char_matrix

DEFAULT_ORDER_BOUND = 4


@dataclass(frozen=True)
class RCochain:
    S: TwistedTorusDatum
    values: tuple[TorusPoint, ...]  # indexed by j in Z/m
    label: ChiData | None = None

    def __call__(self, j: int) -> TorusPoint:
        return self.values[j % self.S.order]

    def negate(self) -> "RCochain":
        """The cochain attached to -X: pointwise inverse."""
        return RCochain(self.S, tuple(v.inverse() for v in self.values), negate_x(self.label) if self.label else None)

    def to_json(self) -> dict:
        return {str(j): v.to_json() for j, v in enumerate(self.values)}


def trivial_rcochain(S: TwistedTorusDatum) -> RCochain:
    return RCochain(S, tuple(identity_point(S.datum, S.K.N) for _ in range(S.order)))


# -- group laws -------------------------------------------------------------------


def theta_power_ext(S: TwistedTorusDatum, j: int, e: ExtWeylElem) -> ExtWeylElem:
    """theta^j on G^ (a pinned automorphism preserves Tits sections)."""
    if S.theta is None or j % S.order == 0:
        return e
    Tc = mat_pow(S.theta_char, j % S.order)
    Tci = mat_pow(S.theta_char, -(j % S.order))
    Tco = mat_pow(S.theta_cochar, j % S.order)
    w = from_char_matrix(S.datum, mat_mul(Tc, mat_mul(e.w.char_matrix, Tci)))
    return ExtWeylElem(e.t.map_lattice(Tco), w)


def lg_mul(S: TwistedTorusDatum, a: tuple[ExtWeylElem, int], b: tuple[ExtWeylElem, int]) -> tuple[ExtWeylElem, int]:
    """(g1, j1)(g2, j2) = (g1 theta^{j1}(g2), j1 + j2) in G^ x| Gamma_f."""
    return ext_mul(a[0], theta_power_ext(S, a[1], b[0])), (a[1] + b[1]) % S.order


def ls_mul(S: TwistedTorusDatum, a: tuple[TorusPoint, int], b: tuple[TorusPoint, int]) -> tuple[TorusPoint, int]:
    """(s1, j1)(s2, j2) = (s1 sigma^{j1}(s2), j1 + j2) in S^ x| Gamma_f."""
    return a[0] * S.act_point(a[1], b[0]), (a[1] + b[1]) % S.order


def minus_one_on_ls(x: tuple[TorusPoint, int]) -> tuple[TorusPoint, int]:
    return x[0].inverse(), x[1]


# -- embeddings -----------------------------------------------------------------------


@dataclass(frozen=True)
class LEmbedding:
    S: TwistedTorusDatum
    r: RCochain

    def __call__(self, x: tuple[TorusPoint, int]) -> tuple[ExtWeylElem, int]:
        s, j = x
        N = self.S.K.N
        g = ext_mul(torus_elem(s * self.r(j)), tits_section(self.S.w_S(j), N))
        return g, j % self.S.order


def ls_generators(S: TwistedTorusDatum, symbol: str | None = "x") -> list[TorusPoint]:
    """Identity, e_k(zeta_N) and (if available) e_k(symbol) for each basis cocharacter."""
    d = S.datum
    N = S.K.N
    one = KElem(0, (), N)
    gens = [identity_point(d, N)]
    for k in range(d.rank):
        gens.append(TorusPoint(d, tuple(KElem(1, (), N) if i == k else one for i in range(d.rank))))
        if symbol is not None:
            gens.append(TorusPoint(d, tuple(KElem(0, ((symbol, 1),), N) if i == k else one for i in range(d.rank))))
    return gens


def check_homomorphism(L: LEmbedding, gens: Sequence[TorusPoint] | None = None) -> Check:
    S = L.S
    gens = gens if gens is not None else ls_generators(S)
    elems = [(s, j) for s in gens for j in range(S.order)]
    for a in elems:
        for b in elems:
            lhs = L(ls_mul(S, a, b))
            rhs = lg_mul(S, L(a), L(b))
            if lhs != rhs:
                return Check(False, {"a": [a[0].to_json(), a[1]], "b": [b[0].to_json(), b[1]]})
    return Check(True, None)


def build_lembedding(S: TwistedTorusDatum, r: RCochain) -> LEmbedding:
    L = LEmbedding(S, r)
    res = check_homomorphism(L)
    if not res:
        raise InvalidRCochain("L-embedding is not a homomorphism", res.witness)
    return L


def search_rcochains(S: TwistedTorusDatum, order_bound: int = DEFAULT_ORDER_BOUND, label: ChiData | None = None) -> list[RCochain]:
    """All r with r(0) = 1 and entries in T^[order_bound] giving a homomorphism."""
    d = S.datum
    N = S.K.N
    if N % order_bound:
        raise ValueError("order bound must divide N")
    step = N // order_bound
    one = identity_point(d, N)
    points = [
        TorusPoint(d, tuple(KElem(step * e, (), N) for e in exps))
        for exps in itertools.product(range(order_bound), repeat=d.rank)
    ]
    gens = ls_generators(S)
    out = []
    for choice in itertools.product(points, repeat=S.order - 1):
        r = RCochain(S, (one,) + tuple(choice), label)
        if check_homomorphism(LEmbedding(S, r), gens):
            out.append(r)
    return out


# -- the identity under the Chevalley involution ------------------------------------------


def verify_chi_inv(
    S: TwistedTorusDatum,
    r: RCochain,
    C: ChevalleyInvolution | None = None,
    sign: int = 1,
    gens: Sequence[TorusPoint] | None = None,
) -> Check:
    """^LC . L_X == Ad(t) . L_{-X} . (-1) on generators x Gamma_f (symbolic model)."""
    C = C or build_chevalley(S.datum, S.K.N)
    embX = LEmbedding(S, r)
    embNeg = LEmbedding(S, r.negate())
    t = torus_elem(t_element(S.datum, S.K.N, sign))
    tinv = torus_elem(t.t.inverse())
    for s in gens if gens is not None else ls_generators(S):
        for j in range(S.order):
            g, jj = embX((s, j))
            lhs = (C.apply(g), jj)
            h, k = embNeg(minus_one_on_ls((s, j)))
            # Ad(t) on (h, k): (t h theta^k(t)^{-1}, k)
            rhs = lg_mul(S, lg_mul(S, (t, 0), (h, k)), (tinv, 0))
            if lhs != rhs:
                return Check(False, {"s": s.to_json(), "sigma": j, "lhs": lhs[0].to_json(), "rhs": rhs[0].to_json()})
    return Check(True, None)


def verify_chi_inv_matrices(
    S: TwistedTorusDatum,
    r: RCochain,
    model: MatrixGroupModel | None = None,
    C: ChevalleyInvolution | None = None,
    sign: int = 1,
) -> Check:
    """The same identity on G^-components, evaluated with matrices.

    C acts on the model through its Lie algebra construction; Ad(t) and the
    embeddings are evaluated by the model's torus and Tits matrices.
    """
    d = S.datum
    N = S.K.N
    C = C or build_chevalley(d, N)
    model = model or realize(d, N, {"x": 3}, rep="adjoint")
    Cmap = C.group_map(model)
    embX = LEmbedding(S, r)
    embNeg = LEmbedding(S, r.negate())
    T = model.torus_matrix(t_element(d, N, sign))
    Tinv = cmat_inverse(T)
    for s in ls_generators(S):
        for j in range(S.order):
            g, _ = embX((s, j))
            h, _ = embNeg(minus_one_on_ls((s, j)))
            lhs = Cmap(model.embed_ext(g))
            rhs = cmat_mul(cmat_mul(T, model.embed_ext(h)), Tinv)
            if not cmat_eq(lhs, rhs):
                return Check(False, {"s": s.to_json(), "sigma": j})
    return Check(True, None)


def check_theta_compatible(S: TwistedTorusDatum, model: MatrixGroupModel) -> Check:
    """theta^ acts on the model through its pinned Lie automorphism (sanity for L-group products)."""
    if S.theta is None:
        return Check(True, None)
    P = pinned_lie_matrix(model.lie, S.theta)
    Pinv = cmat_inverse(P)
    for i in range(len(S.datum.simple)):
        g = model.embed_ext(tits_section(from_char_matrix(S.datum, _simple_reflection_char(S, i)), N=S.K.N))
        img = theta_power_ext(S, 1, tits_section(from_char_matrix(S.datum, _simple_reflection_char(S, i)), S.K.N))
        if not cmat_eq(cmat_mul(cmat_mul(P, g), Pinv), model.embed_ext(img)):
            return Check(False, {"simple": i + 1})
    return Check(True, None)


def _simple_reflection_char(S: TwistedTorusDatum, i: int):
    from .weyl import reflect

    return reflect(S.datum, i).char_matrix
