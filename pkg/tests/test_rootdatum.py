import pytest
from hypothesis import given

from lgk.errors import InvalidType
from lgk.lattice import dot, transpose
from lgk.rootdatum import (
    BasedRootDatum,
    build_from_type,
    cartan_matrix,
    diagram_automorphisms,
    dual,
    identify_type,
    rho_check_double,
)

from strategies import data


def test_a1_sc():
    d = build_from_type("A1", "sc")
    assert d.rank == 1
    assert sorted(d.roots) == [(-2,), (2,)]
    assert d.pair(d.roots[0], d.coroots[0]) == 2


def test_b2_adjoint_cartan():
    d = build_from_type("B2", "adjoint")
    assert len(d.roots) == 8
    assert d.cartan == ((2, -2), (-1, 2))


def test_g2_root_count():
    assert len(build_from_type("G2", "sc").roots) == 12


@pytest.mark.parametrize("name,count", [("A3", 12), ("B3", 18), ("C3", 18), ("D4", 24), ("A4", 20)])
def test_root_counts(name, count):
    assert len(build_from_type(name).roots) == count


def test_dual_b2_is_c2_adjoint():
    d = dual(build_from_type("B2", "sc"))
    assert d.cartan_type == "C2" and d.isogeny == "adjoint"
    assert d.cartan == cartan_matrix("C", 2)


def test_dual_a1():
    d = dual(build_from_type("A1", "sc"))
    assert d.isogeny == "adjoint"
    assert sorted(d.roots) == [(-1,), (1,)]


def test_rho_check_double_small():
    assert rho_check_double(build_from_type("A1", "sc")) == (1,)
    assert rho_check_double(build_from_type("A2", "sc")) == (2, 2)


def test_rho_check_double_b2():
    d = build_from_type("B2", "sc")
    # frozen: sum of the 4 positive coroots in the simple coroot basis
    assert rho_check_double(d) == (4, 3)
    # second route: <alpha_i, 2 rho^vee> = 2 for each simple root
    assert all(dot(d.roots[i], (4, 3)) == 2 for i in d.simple)


@pytest.mark.parametrize("bad", [("D", 3), ("G", 3), ("E", 6), ("B", 1)])
def test_invalid_types(bad):
    with pytest.raises(InvalidType):
        build_from_type(bad[0], "sc", bad[1])


def test_identify_type_keeps_labelling():
    assert identify_type(((2, -1), (-2, 2))) == "C2"
    assert identify_type(((2, -2), (-1, 2))) == "B2"
    assert identify_type(((2, -3), (-1, 2))) == "G2"


def test_json_round_trip():
    d = build_from_type("C3", "adjoint")
    assert BasedRootDatum.from_json(d.to_json()) == d


@given(data())
def test_reflections_permute_roots(d):
    roots = set(d.roots)
    for k, (a, av) in enumerate(zip(d.roots, d.coroots)):
        assert dot(a, av) == 2
        for b, bv in zip(d.roots, d.coroots):
            img = tuple(x - dot(b, av) * y for x, y in zip(b, a))
            img_v = tuple(x - dot(a, bv) * y for x, y in zip(bv, av))
            assert img in roots
            # the coroot of s_a(b) is s_a^vee(b^vee)
            assert d.coroots[d.index[img]] == img_v


@given(data())
def test_dual_transposes_cartan(d):
    assert dual(d).cartan == transpose(d.cartan)


@given(data(["A2", "A3", "D4"]))
def test_pinned_automorphisms_preserve_pairing(d):
    for th in diagram_automorphisms(d):
        for x in d.roots:
            for y in d.coroots:
                assert dot(th.act_char(x), th.act_cochar(y)) == dot(x, y)
        assert sorted(th.act_char(d.roots[i]) for i in d.simple) == sorted(d.roots[i] for i in d.simple)
