"""Chevalley involution C = Ad(n(w0) t0) . delta, built by solving for t0.

delta is the pinned automorphism acting on the simple roots as -w0. In a
matrix model Ad(n(w0)) sends X_{alpha_{pi(i)}} to eps_i X_{-alpha_i} with
eps_i = +-1; t0 is chosen so that alpha_{pi(i)}(t0) = eps_i^{-1}, which makes
C send every X_{alpha_i} to X_{-alpha_i} exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .check import Check
from .cyclotomic import CMatrix, cmat_eq, cmat_identity, cmat_inverse, cmat_mul
from .errors import ConstructionFailure, InvalidType
from .lattice import mat_mul, solve_mod
from .models import ADJOINT_REP, LieModel, MatrixGroupModel, classical_model
from .rootdatum import BasedRootDatum, PinnedAutomorphism, diagram_automorphisms, pinned_automorphism
from .tits import ExtWeylElem, ext_inverse, ext_mul, t_element, tits_section, torus_elem
from .torus import KElem, TorusPoint, eval_root
from .weyl import WeylElem, from_char_matrix, longest_element


@dataclass
class ChevalleyInvolution:
    datum: BasedRootDatum
    delta: PinnedAutomorphism
    w0: WeylElem
    t0: TorusPoint
    signs: tuple[int, ...]
    n_solutions: int
    N: int
    _lie_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n0(self) -> ExtWeylElem:
        return tits_section(self.w0, self.N)

    @property
    def conjugator(self) -> ExtWeylElem:
        """n(w0) t0, so that C = Ad(conjugator) . delta."""
        return ext_mul(self.n0, torus_elem(self.t0))

    @property
    def lattice_map(self):
        """Character-lattice matrix of the diagram part (equals -w0)."""
        return self.delta.char_matrix

    # -- symbolic action on the torus normalizer -------------------------------

    def apply_delta(self, e: ExtWeylElem) -> ExtWeylElem:
        th = self.delta
        w = from_char_matrix(
            self.datum, mat_mul(th.char_matrix, mat_mul(e.w.char_matrix, th.inverse().char_matrix))
        )
        return ExtWeylElem(e.t.auto_act(th), w)

    def apply(self, e: ExtWeylElem) -> ExtWeylElem:
        c = self.conjugator
        return ext_mul(ext_mul(c, self.apply_delta(e)), ext_inverse(c))

    def apply_torus(self, t: TorusPoint) -> TorusPoint:
        return self.apply(torus_elem(t)).t

    def apply_LC(self, g, j: int, group_map: Callable | None = None):
        """^LC = C x id on (g, sigma^j)."""
        f = group_map or self.apply
        return f(g), j

    # -- Lie algebra level -------------------------------------------------------

    def lie_matrix(self, lie: LieModel) -> CMatrix:
        """Matrix of C on the Lie algebra basis of ``lie``."""
        key = id(lie)
        if key in self._lie_cache:
            return self._lie_cache[key][1]
        cm = lie.cm
        n0 = _std_word_matrix(cm, self.w0.word)
        n0_inv = cmat_inverse(n0)
        F = cm.F
        vals = [F.zeta(eval_root(a, self.t0).zeta) for a in self.datum.roots]
        L = cmat_mul(cmat_mul(lie.ad_group(n0, n0_inv), lie.ad_torus(vals)), pinned_lie_matrix(lie, self.delta))
        self._lie_cache[key] = (lie, L)
        return L

    def group_map(self, model: MatrixGroupModel) -> Callable[[CMatrix], CMatrix]:
        """C on group matrices of ``model``.

        In the adjoint representation C(Ad g) = L Ad(g) L^{-1}. In the standard
        representation only the inner case (delta trivial) is available.
        """
        if model.rep == ADJOINT_REP:
            L = self.lie_matrix(model.lie)
            Linv = cmat_inverse(L)
            return lambda g: cmat_mul(cmat_mul(L, g), Linv)
        if not self.delta.is_identity:
            raise InvalidType("outer Chevalley involution has no standard-representation formula here")
        M = model.embed_ext(self.conjugator)
        Minv = cmat_inverse(M)
        return lambda g: cmat_mul(cmat_mul(M, g), Minv)

    def to_json(self) -> dict:
        return {
            "delta": list(self.delta.perm),
            "w0": self.w0.word_1based,
            "t0": self.t0.to_json(),
            "signs": list(self.signs),
            "solutions": self.n_solutions,
        }


def _std_word_matrix(cm, word: Sequence[int]) -> CMatrix:
    out = cmat_identity(cm.F, cm.dim)
    for i in word:
        out = cmat_mul(out, cm.n_matrices[i])
    return out


def pinned_lie_matrix(lie: LieModel, theta: PinnedAutomorphism) -> CMatrix:
    """The Lie algebra automorphism sending X_{+-alpha_i} to X_{+-alpha_{perm(i)}}."""
    cm = lie.cm
    p = theta.perm
    return lie.hom_from_generators([cm.simple_X[p[i]] for i in range(len(p))], [cm.simple_Y[p[i]] for i in range(len(p))])


def minus_w0_automorphism(d: BasedRootDatum) -> PinnedAutomorphism:
    w0 = longest_element(d)
    perm = []
    for i in range(len(d.simple)):
        img = tuple(-x for x in w0.act_char(d.roots[d.simple[i]]))
        j = d.index[img]
        perm.append(d.simple.index(j))
    return pinned_automorphism(d, perm)


def build_chevalley(d: BasedRootDatum, N: int = 24) -> ChevalleyInvolution:
    letter, n = d.cartan_type[0], int(d.cartan_type[1:])
    cm = classical_model(letter, n, N)
    lie = LieModel(d, cm)
    w0 = longest_element(d)
    delta = minus_w0_automorphism(d)
    n0 = _std_word_matrix(cm, w0.word)
    n0_inv = cmat_inverse(n0)
    signs = []
    exps = []
    for i in range(len(d.simple)):
        src = cm.simple_X[delta.perm[i]]
        img = cmat_mul(cmat_mul(n0, src), n0_inv)
        coords = lie.coords(img)
        target = d.negative_index(d.simple[i])
        eps = coords[target]
        if any(not c.is_zero() for k, c in enumerate(coords) if k != target):
            raise ConstructionFailure("Ad(n(w0)) does not map root spaces as expected")
        if eps == 1:
            signs.append(1)
            exps.append(0)
        elif eps == -1:
            signs.append(-1)
            exps.append(N // 2)
        else:
            raise ConstructionFailure(f"unexpected structure constant {eps}")
    # alpha_{pi(i)}(t0) = eps_i^{-1}, i.e. <alpha_{pi(i)}, z> = -e_i mod N
    A = [d.roots[d.simple[delta.perm[i]]] for i in range(len(d.simple))]
    sols = solve_mod(A, [(-e) % N for e in exps], N)
    if not sols:
        raise ConstructionFailure("no torus correction solves the pinning conditions in mu_N")
    t0 = TorusPoint(d, tuple(KElem(z, (), N) for z in sols[0]))
    return ChevalleyInvolution(d, delta, w0, t0, tuple(signs), len(sols), N)


# -- verification ----------------------------------------------------------------------


def t_ext_element(d: BasedRootDatum, N: int = 24, sign: int = 1) -> ExtWeylElem:
    """(prod_{alpha>0} alpha^vee(i), e)."""
    return torus_elem(t_element(d, N, sign))


def verify_opposite_pinning(C: ChevalleyInvolution, lie: LieModel) -> Check:
    """C(X_{alpha_i}) = X_{-alpha_i} and C(X_{-alpha_i}) = X_{alpha_i} exactly."""
    L = C.lie_matrix(lie)
    d = C.datum
    for i, s in enumerate(d.simple):
        if not cmat_eq(lie.image(L, s), lie.cm.simple_Y[i]):
            return Check(False, {"simple": i + 1, "vector": "X"})
        if not cmat_eq(lie.image(L, d.negative_index(s)), lie.cm.simple_X[i]):
            return Check(False, {"simple": i + 1, "vector": "Y"})
    return Check(True, None)


def verify_lattice_part(C: ChevalleyInvolution) -> Check:
    minus_w0 = tuple(tuple(-x for x in row) for row in C.w0.char_matrix)
    return Check(C.lattice_map == minus_w0, {"delta": list(C.delta.perm)})


def verify_torus_inversion(C: ChevalleyInvolution, points: Sequence[TorusPoint]) -> Check:
    for t in points:
        if C.apply_torus(t) != t.inverse():
            return Check(False, t.to_json())
    return Check(True, None)


def verify_commutes(C: ChevalleyInvolution, lie: LieModel, thetas: Sequence[PinnedAutomorphism] | None = None) -> Check:
    L = C.lie_matrix(lie)
    for th in thetas if thetas is not None else diagram_automorphisms(C.datum):
        P = pinned_lie_matrix(lie, th)
        if not cmat_eq(cmat_mul(L, P), cmat_mul(P, L)):
            return Check(False, list(th.perm))
    return Check(True, None)


def square_torus_witness(C: ChevalleyInvolution, lie: LieModel) -> Check:
    """Find x in T(mu_N) with C^2 = Ad(x) on the Lie algebra."""
    L = C.lie_matrix(lie)
    L2 = cmat_mul(L, L)
    d = C.datum
    F = lie.F
    N = C.N
    diag = []
    for a in range(lie.dim):
        for b in range(lie.dim):
            if a != b and not L2[a][b].is_zero():
                return Check(False, "C^2 is not diagonal")
        diag.append(L2[a][a])
    exps = []
    for s in d.simple:
        v = diag[s]
        k = next((k for k in range(N) if F.zeta(k) == v), None)
        if k is None:
            return Check(False, "eigenvalue outside mu_N")
        exps.append(k)
    sols = solve_mod([d.roots[s] for s in d.simple], exps, N)
    for z in sols:
        x = TorusPoint(d, tuple(KElem(e, (), N) for e in z))
        vals = [F.zeta(eval_root(a, x).zeta) for a in d.roots]
        if cmat_eq(lie.ad_torus(vals), L2):
            return Check(True, x.to_json())
    return Check(False, "no torus element found")


def verify_canonical(C: ChevalleyInvolution, lie: LieModel) -> Check:
    """Conjugating by central torus elements (which fix the pinning) leaves C unchanged."""
    d = C.datum
    N = C.N
    L = C.lie_matrix(lie)
    F = lie.F
    centre = solve_mod([d.roots[s] for s in d.simple], [0] * len(d.simple), N)
    for z in centre:
        x = TorusPoint(d, tuple(KElem(e, (), N) for e in z))
        A = lie.ad_torus([F.zeta(eval_root(a, x).zeta) for a in d.roots])
        Ainv = lie.ad_torus([F.zeta(-eval_root(a, x).zeta) for a in d.roots])
        if not cmat_eq(cmat_mul(cmat_mul(A, L), Ainv), L):
            return Check(False, x.to_json())
    return Check(True, len(centre))


def verify_t_element(d: BasedRootDatum, N: int = 24) -> Check:
    """t is fixed by every pinned automorphism and maps to rho^vee(-1) in the adjoint quotient."""
    for sign in (1, -1):
        t = t_element(d, N, sign)
        for th in diagram_automorphisms(d):
            if t.auto_act(th) != t:
                return Check(False, {"sign": sign, "theta": list(th.perm)})
        for k in range(len(d.roots)):
            want = 0 if d.height(k) % 2 == 0 else N // 2
            if eval_root(d.roots[k], t) != KElem(want, (), N):
                return Check(False, {"sign": sign, "root": k})
        sq = t * t
        from .tits import coroot_product

        if sq != coroot_product(d, d.positive, [KElem(N // 2, (), N)] * len(d.roots), N):
            return Check(False, {"sign": sign, "square": sq.to_json()})
    return Check(True, None)


def _basis_points(d: BasedRootDatum, N: int) -> list[TorusPoint]:
    pts = []
    for k in range(d.rank):
        pts.append(TorusPoint(d, tuple(KElem(int(j == k), (), N) for j in range(d.rank))))
    return pts


def verify_chevalley(d: BasedRootDatum, N: int = 24) -> Check:
    """All Chevalley checks on one datum; witness summarizes the construction."""
    C = build_chevalley(d, N)
    cm = classical_model(d.cartan_type[0], int(d.cartan_type[1:]), N)
    lie = LieModel(d, cm)
    checks = {
        "opposite": verify_opposite_pinning(C, lie),
        "lattice": verify_lattice_part(C),
        "commutes": verify_commutes(C, lie),
        "square": square_torus_witness(C, lie),
        "canonical": verify_canonical(C, lie),
        "t": verify_t_element(d, N),
        "hom": Check(lie.is_lie_hom(C.lie_matrix(lie)), None),
        "inversion": verify_torus_inversion(C, _basis_points(d, N)),
    }
    witness = {"construction": C.to_json()}
    witness.update({k: {"ok": v.ok, "witness": v.witness} for k, v in checks.items()})
    return Check(all(v.ok for v in checks.values()), witness)
