import random

import pytest
from hypothesis import given, strategies as st

from lgk.chidata import (
    R1,
    R2,
    AData,
    ScalingVector,
    check_adata,
    check_chidata,
    check_scaling_vector,
    minus_one_preserves_orbits,
    negate_a,
    negate_x,
    random_adata,
    random_chidata,
    random_scaling,
    scale_a,
    theta_orbits,
    unit_scaling,
)
from lgk.errors import InvalidScaling
from lgk.rootdatum import build_from_type, diagram_automorphisms, identity_automorphism, pinned_automorphism
from lgk.splitinv import coeff_group_for, twisted_tori
from lgk.torus import KElem, trivial_twist

N = 24


def _b2_z2_tori():
    d = build_from_type("B2")
    return [S for S in twisted_tori(d, coeff_group_for(2, N - 1, N)) if not S.w_gen.is_identity()]


def test_negate_a1():
    d = build_from_type("A1")
    S = trivial_twist(d)
    i = KElem(N // 4, (), N)
    A = AData(S, (i, i * KElem(N // 2, (), N)))
    assert check_adata(A)
    assert negate_a(A).values[0] == KElem(3 * N // 4, (), N)


def test_theta_identity_orbits():
    d = build_from_type("A3")
    orbits = theta_orbits(d, identity_automorphism(d))
    assert len(orbits) == len(d.roots)
    assert all(len(o) == 1 and t == R1 for o, t in orbits)


def test_a2_flip_orbit_types():
    d = build_from_type("A2")
    th = pinned_automorphism(d, (1, 0))
    types = dict(theta_orbits(d, th, d.positive))
    assert types[(0, 1)] == R2
    assert types[(2,)] == R1


def test_nonconstant_scaling_rejected():
    d = build_from_type("A2")
    S = trivial_twist(d)
    vals = [KElem(0, (), N)] * len(d.roots)
    vals[0] = KElem(1, (), N)
    with pytest.raises(InvalidScaling):
        check_scaling_vector(ScalingVector(S, tuple(vals)))


@given(st.integers(0, 10_000))
def test_random_b2_adata_negation_is_valid(seed):
    rng = random.Random(seed)
    for S in _b2_z2_tori()[:3]:
        A = random_adata(S, rng, symbols=S.K.symbols)
        assert check_adata(negate_a(A))
        assert negate_a(negate_a(A)) == A


@given(st.integers(0, 10_000))
def test_operations_commute(seed):
    rng = random.Random(seed)
    S = rng.choice(_b2_z2_tori())
    A = random_adata(S, rng, symbols=S.K.symbols)
    c = random_scaling(S, rng, symbols=S.K.symbols)
    assert negate_a(scale_a(c, A)) == scale_a(c, negate_a(A))
    assert check_adata(scale_a(c, A))
    X = random_chidata(S, 4, rng)
    assert check_chidata(negate_x(X))
    assert negate_x(negate_x(X)) == X


def test_unit_scaling_is_neutral():
    S = _b2_z2_tori()[0]
    A = random_adata(S, random.Random(1), symbols=S.K.symbols)
    assert scale_a(unit_scaling(S), A) == A


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2"])
def test_minus_one_preserves_orbits(name):
    for iso in ("sc", "adjoint"):
        d = build_from_type(name, iso)
        for th in diagram_automorphisms(d):
            assert minus_one_preserves_orbits(d, th)


def test_r3_hook_overrides_label():
    d = build_from_type("A2")
    th = pinned_automorphism(d, (1, 0))
    labels = {t for _, t in theta_orbits(d, th, r3=lambda orbit, dd: len(orbit) == 2)}
    assert "R3" in labels
