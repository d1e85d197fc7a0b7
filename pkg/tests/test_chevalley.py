import pytest
from hypothesis import given, strategies as st

from lgk.chevalley import build_chevalley, verify_chevalley, verify_lattice_part
from lgk.cyclotomic import cmat_eq
from lgk.errors import InvalidType
from lgk.models import realize
from lgk.rootdatum import build_from_type
from lgk.tits import word_product
from lgk.torus import KElem, TorusPoint
from lgk.weyl import longest_element

from strategies import words

N = 24


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C2", "D4"])
@pytest.mark.parametrize("iso", ["sc", "adjoint"])
def test_full_chevalley_checks(name, iso):
    res = verify_chevalley(build_from_type(name, iso), N)
    assert res.ok, {k: v for k, v in res.witness.items() if isinstance(v, dict) and not v.get("ok", True)}


def test_lattice_part_is_minus_w0():
    d = build_from_type("A3")
    C = build_chevalley(d, N)
    minus_w0 = tuple(tuple(-x for x in r) for r in longest_element(d).char_matrix)
    assert C.lattice_map == minus_w0
    assert verify_lattice_part(C)


def test_g2_needs_a_model():
    # the pinning signs are read off a classical matrix model
    with pytest.raises(InvalidType):
        build_chevalley(build_from_type("G2"), N)


@given(st.data())
def test_symbolic_action_matches_matrices(dd):
    name = dd.draw(st.sampled_from(["A1", "A2", "B2", "C2"]))
    iso = dd.draw(st.sampled_from(["sc", "adjoint"]))
    d = build_from_type(name, iso)
    C = build_chevalley(d, N)
    m = realize(d, N, rep="adjoint")
    e = word_product(d, dd.draw(words(d, 5)), N)
    zs = dd.draw(st.lists(st.integers(0, N - 1), min_size=d.rank, max_size=d.rank))
    e = type(e)(TorusPoint(d, tuple(KElem(z, (), N) for z in zs)) * e.t, e.w)
    assert cmat_eq(C.group_map(m)(m.embed_ext(e)), m.embed_ext(C.apply(e)))


@given(st.data())
def test_involution_on_torus(dd):
    d = build_from_type(dd.draw(st.sampled_from(["A2", "B2", "A3", "C2"])), dd.draw(st.sampled_from(["sc", "adjoint"])))
    C = build_chevalley(d, N)
    t = TorusPoint(d, tuple(KElem(dd.draw(st.integers(0, N - 1)), (("x", dd.draw(st.integers(-2, 2))),), N) for _ in range(d.rank)))
    assert C.apply_torus(t) == t.inverse()
    assert C.apply_torus(C.apply_torus(t)) == t
