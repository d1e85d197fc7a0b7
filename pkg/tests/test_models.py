import pytest
from hypothesis import given, strategies as st

from lgk.cyclotomic import cmat_eq, cmat_mul, cmat_repr
from lgk.errors import InvalidType
from lgk.models import check_tits_well_defined, realize
from lgk.rootdatum import build_from_type
from lgk.tits import ext_mul, word_product
from lgk.torus import CoeffGroup, eval_cocharacter

from strategies import words

N = 24


def test_sl2_weyl_matrix():
    m = realize(build_from_type("A1"))
    assert m.rep == "standard"
    assert cmat_repr(m.gen_matrices[0]) == [["0", "1"], ["-1", "0"]]


def test_pgl2_falls_back_to_adjoint():
    assert realize(build_from_type("A1", "adjoint")).rep == "adjoint"


def test_g2_has_no_model():
    with pytest.raises(InvalidType):
        realize(build_from_type("G2"))


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C2", "B3", "C3", "D4"])
def test_generator_squares(name):
    d = build_from_type(name)
    m = realize(d, N)
    K = CoeffGroup(N)
    for i, s in enumerate(d.simple):
        sq = cmat_mul(m.gen_matrices[i], m.gen_matrices[i])
        assert cmat_eq(sq, m.torus_matrix(eval_cocharacter(d, d.coroots[s], K.minus_one)))
        assert m.preserves_form(m.gen_matrices[i])


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C2"])
@pytest.mark.parametrize("iso", ["sc", "adjoint"])
def test_symbolic_sections_match_matrices(name, iso):
    assert check_tits_well_defined(build_from_type(name, iso), N)


@given(st.data())
def test_embed_is_homomorphism(dd):
    name = dd.draw(st.sampled_from(["A2", "B2", "C2", "A3"]))
    iso = dd.draw(st.sampled_from(["sc", "adjoint"]))
    d = build_from_type(name, iso)
    m = realize(d, N)
    a = word_product(d, dd.draw(words(d, 6)), N)
    b = word_product(d, dd.draw(words(d, 6)), N)
    assert cmat_eq(m.embed_ext(ext_mul(a, b)), cmat_mul(m.embed_ext(a), m.embed_ext(b)))
