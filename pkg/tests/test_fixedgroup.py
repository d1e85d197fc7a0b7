import pytest

from lgk.errors import WitnessNotFound
from lgk.fixedgroup import (
    build_fixed_datum,
    check_c_orthogonality,
    check_commuting_gamma,
    check_fibers,
    matrix_oracle,
    search_conjugator,
    triality,
    verify_chevalley_on_fixed,
    weyl_order_check,
)
from lgk.lattice import dot
from lgk.rootdatum import build_from_type, diagram_automorphisms, identity_automorphism, pinned_automorphism

FLIPS = [("A2", (1, 0)), ("A3", (2, 1, 0)), ("A4", (3, 2, 1, 0)), ("D4", (0, 1, 3, 2)), ("D4", (2, 1, 3, 0))]


def test_identity_theta():
    d = build_from_type("B3")
    fd = build_fixed_datum(d, identity_automorphism(d))
    assert fd.c == (1, 1, 1)
    assert fd.cartan == d.cartan
    assert set(fd.restricted.roots) == set(d.roots)
    res = verify_chevalley_on_fixed(fd)
    assert res.ok
    assert res.witness["conjugator"]["exponents"] == [[0, 0]] * 3


@pytest.mark.parametrize("iso", ["sc", "adjoint"])
def test_a3_flip_gives_c2(iso):
    d = build_from_type("A3", iso)
    fd = build_fixed_datum(d, pinned_automorphism(d, (2, 1, 0)))
    assert fd.type_name == "C2"
    assert fd.c == (1, 1)
    assert matrix_oracle(fd)
    assert verify_chevalley_on_fixed(fd)


@pytest.mark.parametrize("iso", ["sc", "adjoint"])
def test_a2_flip_rank_one_with_c_two(iso):
    d = build_from_type("A2", iso)
    fd = build_fixed_datum(d, pinned_automorphism(d, (1, 0)))
    assert fd.restricted.rank == 1 and len(fd.restricted.simple) == 1
    assert fd.c == (2,)
    a = fd.restricted.roots[fd.restricted.simple[0]]
    h = fd.restricted.coroots[fd.restricted.simple[0]]
    assert dot(a, h) == 2
    # H_res = 2 (H_1 + H_2) in the parent cocharacter lattice
    assert fd.coroot_sums[0] == tuple(2 * (x + y) for x, y in zip(d.coroots[0], d.coroots[1]))
    assert matrix_oracle(fd)
    res = verify_chevalley_on_fixed(fd)
    assert res.ok and res.witness["c"] == [2]


def test_a2_flip_needs_a_non_root_of_unity():
    d = build_from_type("A2")
    fd = build_fixed_datum(d, pinned_automorphism(d, (1, 0)))
    with pytest.raises(WitnessNotFound):
        search_conjugator(fd, depth=0)


def test_d4_triality_gives_g2():
    d = build_from_type("D4")
    fd = build_fixed_datum(d, triality(d))
    assert fd.type_name == "G2"
    assert fd.c == (1, 1)
    assert verify_chevalley_on_fixed(fd)


@pytest.mark.parametrize("name,perm", FLIPS)
def test_structure(name, perm):
    d = build_from_type(name)
    fd = build_fixed_datum(d, pinned_automorphism(d, perm))
    assert check_fibers(fd)
    assert check_c_orthogonality(fd)
    assert weyl_order_check(fd)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B3", "C3", "D4"])
def test_fibers_for_all_automorphisms(name):
    for iso in ("sc", "adjoint"):
        d = build_from_type(name, iso)
        for th in diagram_automorphisms(d):
            fd = build_fixed_datum(d, th)
            assert check_fibers(fd)
            assert check_c_orthogonality(fd)


def test_commuting_gamma_permutes_fibers():
    d = build_from_type("D4")
    th = pinned_automorphism(d, (0, 1, 3, 2))
    fd = build_fixed_datum(d, th)
    assert check_commuting_gamma(fd, th)
    assert not check_commuting_gamma(fd, triality(d))
