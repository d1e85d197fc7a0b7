"""Core of the splitting-invariant cochain and the comparison of rescaled pinnings.

For sigma in Gamma_f the core value is

    prod_{alpha in P(w)} alpha^vee(a_alpha) . n_{c.spl}(w),   w = w_S(sigma),

where n_{c.spl}(w) is computed honestly by multiplying the rescaled simple
sections alpha_i^vee(c_{alpha_i}) n(s_i) along a reduced word, and P(w) is
the set of positive roots made negative by w^{-1} (the ``left`` convention;
``literal`` uses w instead). The alignment term sigma(h^{-1}) h is common to
both sides of the comparison and is left out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .check import Check
from .chidata import AData, ScalingVector, random_adata, random_scaling, scale_a, unit_scaling, check_scaling_vector
from .lattice import mat_mul, mat_pow
from .rootdatum import build_from_type, diagram_automorphisms
from .tits import LEFT, ExtWeylElem, coroot_product, ext_mul, rescaled_section_from_generators, scaling_support, torus_elem
from .torus import CoeffGroup, TwistedTorusDatum
from .weyl import enumerate_group


def splitting_invariant_core(
    S: TwistedTorusDatum, A: AData, c: ScalingVector | None = None, convention: str = LEFT
) -> list[ExtWeylElem]:
    """Core value for sigma^j, j = 0..m-1."""
    if c is None:
        c = unit_scaling(S)
    else:
        check_scaling_vector(c)
    N = S.K.N
    out = []
    for j in range(S.order):
        w = S.w_S(j)
        prefix = coroot_product(S.datum, scaling_support(w, convention), A.values, N)
        section = rescaled_section_from_generators(c.values, w, N)
        out.append(ext_mul(torus_elem(prefix), section))
    return out


def verify_splcng(S: TwistedTorusDatum, A: AData, c: ScalingVector, convention: str = LEFT) -> Check:
    """core(A, c.spl) == core(c.A, spl) for every sigma; witness is the first failing sigma."""
    lhs = splitting_invariant_core(S, A, c, convention)
    rhs = splitting_invariant_core(S, scale_a(c, A), None, convention)
    for j, (x, y) in enumerate(zip(lhs, rhs)):
        if x != y:
            return Check(False, {"sigma": j, "lhs": x.to_json(), "rhs": y.to_json()})
    return Check(True, None)


def check_core_shape(S: TwistedTorusDatum, core: list[ExtWeylElem]) -> Check:
    """Every core value has Weyl part exactly w_S(sigma)."""
    for j, e in enumerate(core):
        if e.w != S.w_S(j):
            return Check(False, {"sigma": j})
    return Check(True, None)


# -- random instances ----------------------------------------------------------------

SPLCNG_TYPES = ("A2", "A3", "B2", "C2")


@dataclass
class SplcngInstance:
    seed: int
    S: TwistedTorusDatum
    A: AData
    c: ScalingVector

    def describe(self) -> dict:
        return {
            "seed": self.seed,
            "type": self.S.datum.cartan_type,
            "isogeny": self.S.datum.isogeny,
            "torus": self.S.to_json(),
        }


def twisted_tori(d, K: CoeffGroup) -> list[TwistedTorusDatum]:
    """All twisted tori of order K.order: pairs (w, theta) with (w theta)^m = 1 and theta^m = 1."""
    m = K.order
    out = []
    for th in diagram_automorphisms(d):
        if mat_pow(th.char_matrix, m) != _eye(d.rank):
            continue
        for w in enumerate_group(d):
            g = mat_mul(w.char_matrix, th.char_matrix)
            if mat_pow(g, m) == _eye(d.rank):
                out.append(TwistedTorusDatum(d, K, w, None if th.is_identity else th))
    return out


def _eye(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def coeff_group_for(m: int, unit: int, N: int = 24) -> CoeffGroup:
    if m == 2:
        # d is sent to -d, so roots with sigma(alpha) = -alpha admit a-data
        return CoeffGroup(N, ("a", "b", "c", "d"), 2, unit, (("a", ("b", 0)), ("b", ("a", 0)), ("d", ("d", N // 2))))
    if m == 3:
        return CoeffGroup(N, ("a", "b", "c", "e"), 3, unit, (("a", ("b", 0)), ("b", ("c", 0)), ("c", ("a", 0))))
    return CoeffGroup(N, ("a", "b", "c"), m, unit)


def random_instance(
    seed: int, types=SPLCNG_TYPES, orders=(2, 3), N: int = 24, isogenies=("sc", "adjoint")
) -> SplcngInstance:
    rng = random.Random(seed)
    t = rng.choice(types)
    iso = rng.choice(list(isogenies))
    d = build_from_type(t, iso)
    m = rng.choice(orders)
    units = [u for u in range(1, N) if pow(u, m, N) == 1 and _coprime(u, N)]
    if m == 2:
        units = [u for u in units if u in (1, N - 1)]
    K = coeff_group_for(m, rng.choice(units), N)
    tori = [S for S in twisted_tori(d, K) if not (S.w_gen.is_identity() and S.theta is None)] or twisted_tori(d, K)
    S = rng.choice(tori)
    S.check()
    A = random_adata(S, rng, symbols=K.symbols)
    c = random_scaling(S, rng, symbols=K.symbols)
    return SplcngInstance(seed, S, A, c)


def _coprime(a: int, b: int) -> bool:
    from math import gcd

    return gcd(a, b) == 1


def run_splcng_suite(seed: int = 0, count: int = 100, convention: str = LEFT) -> list[tuple[SplcngInstance, Check]]:
    results = []
    for k in range(count):
        inst = random_instance(seed * 100_003 + k)
        results.append((inst, verify_splcng(inst.S, inst.A, inst.c, convention)))
    return results
