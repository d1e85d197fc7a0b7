from hypothesis import given, strategies as st

from lgk.rootdatum import build_from_type
from lgk.torus import CoeffGroup, KElem, TorusPoint, eval_cocharacter, eval_root, galois_act, identity_point
from lgk.weyl import reflect

N = 24
kelems = st.builds(
    lambda z, e: KElem(z, (("x", e),) if e else (), N), st.integers(0, N - 1), st.integers(-3, 3)
)


def test_minus_one_and_i():
    K = CoeffGroup(N)
    assert K.minus_one * K.minus_one == K.one()
    assert K.i * K.i == K.minus_one


def test_exact_equality():
    assert KElem(25, (), N) == KElem(1, (), N)
    assert KElem(0, (("x", 1),), N) != KElem(0, (), N)


def test_eval_cocharacter_basis():
    d = build_from_type("A1", "sc")
    K = CoeffGroup(N)
    t = eval_cocharacter(d, d.coroots[0], K.minus_one)
    assert t.coords == (K.minus_one,)
    assert eval_cocharacter(d, (0,), K.zeta(5)).is_identity()


def test_galois_trivial_and_reflection():
    d = build_from_type("A1", "sc")
    K = CoeffGroup(N)
    t = TorusPoint(d, (KElem(3, (), N),))
    assert galois_act(K, 0, t) == t
    assert galois_act(K, 0, t, reflect(d, 0)) == t.inverse()


@given(kelems, kelems, kelems)
def test_kelem_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == KElem(0, (), N)
    assert a * b == b * a


@given(kelems, kelems)
def test_eval_root_is_multiplicative(a, b):
    d = build_from_type("B2", "adjoint")
    s = TorusPoint(d, (a, b))
    t = TorusPoint(d, (b, a))
    for r in d.roots:
        assert eval_root(r, s * t) == eval_root(r, s) * eval_root(r, t)
    assert (s * s.inverse()) == identity_point(d, N)
