import pytest

from lgk.lembed import (
    LEmbedding,
    RCochain,
    build_lembedding,
    check_homomorphism,
    check_theta_compatible,
    lg_mul,
    ls_generators,
    minus_one_on_ls,
    search_rcochains,
    trivial_rcochain,
    verify_chi_inv,
    verify_chi_inv_matrices,
)
from lgk.errors import InvalidRCochain
from lgk.models import realize
from lgk.rootdatum import build_from_type, dual, pinned_automorphism
from lgk.tits import t_element, torus_elem
from lgk.torus import CoeffGroup, KElem, TwistedTorusDatum, eval_cocharacter, identity_point, trivial_twist
from lgk.weyl import from_word, identity_elem

N = 24


def _a1_dual_twisted():
    d = dual(build_from_type("A1", "sc"))
    K = CoeffGroup(N, ("x",), 2, 1)
    return TwistedTorusDatum(d, K, from_word(d, [0]))


def test_trivial_gamma_embedding():
    d = build_from_type("A2", "adjoint")
    S = trivial_twist(d, CoeffGroup(N, ("x",)))
    L = build_lembedding(S, trivial_rcochain(S))
    for s in ls_generators(S):
        g, j = L((s, 0))
        assert g == torus_elem(s) and j == 0


def test_a1_order_two_coroot_value_accepted():
    S = _a1_dual_twisted()
    d = S.datum
    r = RCochain(S, (identity_point(d, N), eval_cocharacter(d, d.coroots[d.simple[0]], KElem(N // 2, (), N))))
    build_lembedding(S, r)
    assert verify_chi_inv(S, r)


def test_trivial_r_rejected_for_sl2():
    # in SL2, n(s)^2 = alpha^vee(-1) = -1, so r = 1 does not give a homomorphism
    d = build_from_type("A1", "sc")
    S = TwistedTorusDatum(d, CoeffGroup(N, ("x",), 2, 1), from_word(d, [0]))
    with pytest.raises(InvalidRCochain):
        build_lembedding(S, trivial_rcochain(S))


def test_trivial_r_accepted_for_pgl2():
    S = _a1_dual_twisted()
    build_lembedding(S, trivial_rcochain(S))


def test_a1_dual_all_found_cochains():
    S = _a1_dual_twisted()
    found = search_rcochains(S, 4)
    assert len(found) == 4
    model = realize(S.datum, N, {"x": 3}, rep="adjoint")
    for r in found:
        assert verify_chi_inv(S, r)
        assert verify_chi_inv(S, r, sign=-1)
        assert verify_chi_inv_matrices(S, r, model)


def test_a2_dual_flip_twist():
    d = dual(build_from_type("A2", "sc"))
    K = CoeffGroup(N, ("x",), 2, 1)
    th = pinned_automorphism(d, (1, 0))
    S = TwistedTorusDatum(d, K, identity_elem(d), th)
    S.check()
    found = search_rcochains(S, 4)
    assert found
    model = realize(d, N, {"x": 3}, rep="adjoint")
    assert check_theta_compatible(S, model)
    for r in found:
        assert verify_chi_inv(S, r)
    assert verify_chi_inv_matrices(S, found[0], model)


def test_closure_under_negation():
    """If L_X is a homomorphism, so is x -> Ad(t) L_{-X}((-1) x)."""
    S = _a1_dual_twisted()
    t = torus_elem(t_element(S.datum, N))
    tinv = torus_elem(t.t.inverse())
    for r in search_rcochains(S, 4):
        neg = LEmbedding(S, r.negate())
        assert check_homomorphism(neg)

        def f(x):
            return lg_mul(S, lg_mul(S, (t, 0), neg(minus_one_on_ls(x))), (tinv, 0))

        gens = [(s, j) for s in ls_generators(S) for j in range(S.order)]
        for a in gens:
            for b in gens:
                prod = (a[0] * S.act_point(a[1], b[0]), (a[1] + b[1]) % S.order)
                assert f(prod) == lg_mul(S, f(a), f(b))
