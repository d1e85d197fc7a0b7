"""The connected theta-fixed subgroup of a pinned group, at lattice and Lie algebra level.

Restricted characters are the theta-coinvariants of X^* modulo torsion
(computed with a Smith normal form); restricted cocharacters are the
theta-invariants of X_*. A theta-orbit O of simple roots restricts to one
simple root alpha_res with coroot H = c . sum_{beta in O} beta^vee, where
c = 2 when two members of O sum to a root and c = 1 otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .check import Check
from .chevalley import ChevalleyInvolution, build_chevalley, pinned_lie_matrix
from .chidata import R2, orbit_type
from .cyclotomic import CMatrix, cmat_add, cmat_bracket, cmat_eq, cmat_scale, cmat_zero
from .errors import InvalidAutomorphism, WitnessNotFound
from .lattice import Vector, dot, identity, int_inverse, kernel_basis, mat_sub, smith_normal_form
from .models import LieModel, classical_model
from .rootdatum import (
    BasedRootDatum,
    PinnedAutomorphism,
    from_simple_system,
    identify_type,
)
from .torus import KElem, TorusPoint, eval_root
from .weyl import enumerate_group

TWO = "two"


@dataclass
class FixedSubgroupDatum:
    parent: BasedRootDatum
    theta: PinnedAutomorphism
    restricted: BasedRootDatum
    orbits: tuple[tuple[int, ...], ...]  # theta-orbits of simple indices, one per restricted simple root
    c: tuple[int, ...]
    restrict_rows: tuple[Vector, ...]  # X^* -> restricted character coordinates
    cochar_basis: tuple[Vector, ...]  # basis of X_*^theta dual to restricted characters
    coroot_sums: tuple[Vector, ...]  # c . sum beta^vee in parent cocharacter coordinates

    def restrict(self, x: Sequence[int]) -> Vector:
        return tuple(dot(row, x) for row in self.restrict_rows)

    def embed_cochar(self, y: Sequence[int]) -> Vector:
        """Restricted cocharacter coordinates -> parent cocharacter vector."""
        n = self.parent.rank
        return tuple(sum(y[b] * self.cochar_basis[b][k] for b in range(len(y))) for k in range(n))

    @property
    def cartan(self):
        return self.restricted.cartan

    @property
    def type_name(self) -> str | None:
        return identify_type(self.cartan)

    def to_json(self) -> dict:
        out = self.restricted.to_json()
        out["fibers"] = [[i + 1 for i in o] for o in self.orbits]
        out["c"] = list(self.c)
        out["identifiedType"] = self.type_name
        return out


def simple_orbits(d: BasedRootDatum, theta: PinnedAutomorphism) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(d.simple)):
        if i in seen:
            continue
        orbit = [i]
        j = theta.perm[i]
        while j != i:
            orbit.append(j)
            j = theta.perm[j]
        seen.update(orbit)
        out.append(tuple(sorted(orbit)))
    return out


def build_fixed_datum(d: BasedRootDatum, theta: PinnedAutomorphism) -> FixedSubgroupDatum:
    if theta.datum != d:
        raise InvalidAutomorphism("automorphism belongs to a different datum")
    theta.check()
    n = d.rank
    I = identity(n)
    D, U, _ = smith_normal_form(mat_sub(theta.char_matrix, I))
    rk = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    rows = tuple(U[k] for k in range(rk, n))
    Uinv = int_inverse(U)
    lifts = [tuple(Uinv[r][k] for r in range(n)) for k in range(rk, n)]
    fixed = kernel_basis(mat_sub(theta.cochar_matrix, I))
    B = [[dot(u, f) for f in fixed] for u in lifts]
    Binv = int_inverse(B)  # perfect pairing between coinvariants/torsion and invariants
    # f'_b = sum_c fixed_c Binv[c][b], so that <lift_a, f'_b> = delta_ab
    basis = tuple(
        tuple(sum(fixed[cc][k] * Binv[cc][b] for cc in range(len(fixed))) for k in range(n))
        for b in range(len(fixed))
    )
    orbits = simple_orbits(d, theta)
    simple_roots, simple_coroots, cs, sums = [], [], [], []
    for orbit in orbits:
        roots_idx = [d.simple[i] for i in orbit]
        c = 2 if orbit_type(d, roots_idx) == R2 else 1
        H = [0] * n
        for k in roots_idx:
            H = [h + c * x for h, x in zip(H, d.coroots[k])]
        res = tuple(dot(row, d.roots[roots_idx[0]]) for row in rows)
        for k in roots_idx[1:]:
            if tuple(dot(row, d.roots[k]) for row in rows) != res:
                raise AssertionError("orbit members restrict differently")
        y = tuple(dot(u, H) for u in lifts)
        if dot(res, y) != 2:
            raise AssertionError(f"<alpha_res, H_res> = {dot(res, y)} for orbit {orbit}")
        simple_roots.append(res)
        simple_coroots.append(y)
        cs.append(c)
        sums.append(tuple(H))
    A = tuple(tuple(dot(a, h) for h in simple_coroots) for a in simple_roots)
    name = identify_type(A) or "?"
    restricted = from_simple_system(simple_roots, simple_coroots, name, "custom")
    return FixedSubgroupDatum(d, theta, restricted, tuple(orbits), tuple(cs), rows, basis, tuple(sums))


# -- checks ----------------------------------------------------------------------------


def check_fibers(fd: FixedSubgroupDatum) -> Check:
    """Restriction of simple roots is onto, with fibers exactly the theta-orbits."""
    d = fd.parent
    images: dict[Vector, list[int]] = {}
    for i, s in enumerate(d.simple):
        images.setdefault(fd.restrict(d.roots[s]), []).append(i)
    fibers = sorted(tuple(sorted(v)) for v in images.values())
    ok = fibers == sorted(fd.orbits)
    simple_res = {fd.restricted.roots[k] for k in fd.restricted.simple}
    ok = ok and set(images) == simple_res
    return Check(ok, {"fibers": [[i + 1 for i in f] for f in fibers]})


def check_c_orthogonality(fd: FixedSubgroupDatum) -> Check:
    """c = 1 exactly when fiber members are pairwise orthogonal."""
    d = fd.parent
    for orbit, c in zip(fd.orbits, fd.c):
        orth = all(
            dot(d.roots[d.simple[a]], d.coroots[d.simple[b]]) == 0 for a in orbit for b in orbit if a != b
        )
        if orth != (c == 1):
            return Check(False, {"orbit": [i + 1 for i in orbit], "c": c})
    return Check(True, None)


def check_commuting_gamma(fd: FixedSubgroupDatum, gamma: PinnedAutomorphism) -> Check:
    """A commuting pinned automorphism permutes the fibers."""
    if gamma.compose(fd.theta).perm != fd.theta.compose(gamma).perm:
        return Check(False, "gamma does not commute with theta")
    orbits = set(fd.orbits)
    for o in fd.orbits:
        if tuple(sorted(gamma.perm[i] for i in o)) not in orbits:
            return Check(False, {"orbit": [i + 1 for i in o]})
    return Check(True, None)


def weyl_order_check(fd: FixedSubgroupDatum) -> Check:
    """|W(restricted)| equals the number of theta-fixed parent Weyl elements."""
    from .lattice import mat_mul

    th = fd.theta.char_matrix
    th_inv = fd.theta.inverse().char_matrix
    fixed = sum(1 for w in enumerate_group(fd.parent) if mat_mul(th, mat_mul(w.char_matrix, th_inv)) == w.char_matrix)
    res = len(enumerate_group(fd.restricted))
    return Check(fixed == res, {"fixed": fixed, "restricted": res})


@dataclass
class FixedPinning:
    X: list[CMatrix]
    H: list[CMatrix]
    Y: list[CMatrix]


def fixed_pinning(fd: FixedSubgroupDatum, lie: LieModel) -> FixedPinning:
    """X_res = sum X_beta, H_res = c sum H_beta, X_{-res} = c sum X_{-beta} in the matrix model."""
    cm = lie.cm
    F = cm.F
    Xs, Hs, Ys = [], [], []
    for orbit, c in zip(fd.orbits, fd.c):
        X = cmat_zero(F, cm.dim)
        H = cmat_zero(F, cm.dim)
        Y = cmat_zero(F, cm.dim)
        for i in orbit:
            X = cmat_add(X, cm.simple_X[i])
            H = cmat_add(H, cmat_scale(c, cm.simple_H[i]))
            Y = cmat_add(Y, cmat_scale(c, cm.simple_Y[i]))
        Xs.append(X)
        Hs.append(H)
        Ys.append(Y)
    return FixedPinning(Xs, Hs, Ys)


def matrix_oracle(fd: FixedSubgroupDatum, N: int = 24) -> Check:
    """sl2-triples of the fixed pinning are theta-fixed, and ad(H_j) X_i = A_ij X_i reproduces the Cartan matrix."""
    d = fd.parent
    cm = classical_model(d.cartan_type[0], int(d.cartan_type[1:]), N)
    lie = LieModel(d, cm)
    P = pinned_lie_matrix(lie, fd.theta)
    pin = fixed_pinning(fd, lie)
    A = fd.cartan
    r = len(pin.X)
    for i in range(r):
        for M in (pin.X[i], pin.H[i], pin.Y[i]):
            if not cmat_eq(lie.apply(P, M), M):
                return Check(False, {"orbit": i, "reason": "not theta-fixed"})
        if not cmat_eq(cmat_bracket(pin.X[i], pin.Y[i]), pin.H[i]):
            return Check(False, {"orbit": i, "reason": "[X, X_-] != H"})
        for j in range(r):
            if not cmat_eq(cmat_bracket(pin.H[j], pin.X[i]), cmat_scale(A[i][j], pin.X[i])):
                return Check(False, {"orbit": i, "reason": f"Cartan entry ({i},{j})"})
    return Check(True, {"cartan": [list(row) for row in A]})


# -- Chevalley involution on the fixed subgroup ------------------------------------------


def _fixed_point(fd: FixedSubgroupDatum, coeffs: Sequence[KElem]) -> TorusPoint:
    """prod_b f'_b(coeffs[b]) as a parent torus point."""
    d = fd.parent
    N = coeffs[0].N
    out = [KElem(0, (), N) for _ in range(d.rank)]
    for f, x in zip(fd.cochar_basis, coeffs):
        out = [o * x ** e for o, e in zip(out, f)]
    return TorusPoint(d, tuple(out))


def search_conjugator(fd: FixedSubgroupDatum, N: int = 24, depth: int = 2) -> tuple[TorusPoint, list[tuple[int, int]]]:
    """Find s in T^1 with alpha_res(s) = 1/c for every restricted simple root.

    Candidates are prod_b f'_b(zeta^{a_b} two^{e_b}) with |e_b| <= depth,
    searched by increasing max |e_b| and then lexicographically.
    """
    rs = [fd.restricted.roots[k] for k in fd.restricted.simple]
    s = len(fd.cochar_basis)
    for bound in range(depth + 1):
        es = [e for e in itertools.product(range(-bound, bound + 1), repeat=s) if max(map(abs, e), default=0) == bound]
        for e in es:
            # free part: sum_b e_b r_b = -1 if c = 2 else 0
            if any(dot(r, e) != (-1 if c == 2 else 0) for r, c in zip(rs, fd.c)):
                continue
            for a in itertools.product(range(N), repeat=s):
                if all(dot(r, a) % N == 0 for r in rs):
                    coeffs = [KElem(ab, ((TWO, eb),) if eb else (), N) for ab, eb in zip(a, e)]
                    return _fixed_point(fd, coeffs), list(zip(a, e))
    raise WitnessNotFound(f"no conjugator with |two exponent| <= {depth}")


def verify_chevalley_on_fixed(
    fd: FixedSubgroupDatum, C: ChevalleyInvolution | None = None, N: int = 24, depth: int = 2
) -> Check:
    d = fd.parent
    C = C or build_chevalley(d, N)
    cm = classical_model(d.cartan_type[0], int(d.cartan_type[1:]), N)
    lie = LieModel(d, cm)
    F = cm.F
    L = C.lie_matrix(lie)
    P = pinned_lie_matrix(lie, fd.theta)
    pin = fixed_pinning(fd, lie)
    witness: dict = {}
    # (i) C maps the fixed pinning into fixed data
    for i in range(len(pin.X)):
        CX = lie.apply(L, pin.X[i])
        if not cmat_eq(lie.apply(P, CX), CX):
            return Check(False, {"step": "fixed", "orbit": i})
        if not cmat_eq(lie.apply(L, pin.H[i]), cmat_scale(-1, pin.H[i])):
            return Check(False, {"step": "coroot", "orbit": i})
    # (ii) C inverts the restricted torus
    for b in range(len(fd.cochar_basis)):
        coeffs = [KElem(int(k == b), (), N) for k in range(len(fd.cochar_basis))]
        t = _fixed_point(fd, coeffs)
        if C.apply_torus(t) != t.inverse():
            return Check(False, {"step": "torus", "basis": b})
    # (iii) a fixed torus element conjugates C(spl^1) to the opposite pinning
    s, exps = search_conjugator(fd, N, depth)
    two = F.rational(2)
    vals = []
    for a in d.roots:
        x = eval_root(a, s)
        v = F.zeta(x.zeta)
        for sym, e in x.free:
            v = v * two ** e
        vals.append(v)
    Ad = lie.ad_torus(vals)
    for i in range(len(pin.X)):
        img = lie.apply(Ad, lie.apply(L, pin.X[i]))
        if not cmat_eq(img, pin.Y[i]):
            return Check(False, {"step": "conjugator", "orbit": i})
    witness["conjugator"] = {"point": s.to_json(), "exponents": [[a, e] for a, e in exps]}
    witness["c"] = list(fd.c)
    return Check(True, witness)


def triality(d: BasedRootDatum) -> PinnedAutomorphism:
    """Order-3 automorphism of D4 cycling the three outer nodes."""
    from .rootdatum import pinned_automorphism

    return pinned_automorphism(d, (2, 1, 3, 0))
