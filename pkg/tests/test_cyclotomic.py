from fractions import Fraction

from hypothesis import given, strategies as st

from lgk.cyclotomic import CycField

F = CycField(24)
elems = st.lists(st.integers(-5, 5), min_size=F.phi, max_size=F.phi).map(lambda c: F.zero() + sum((F.zeta(k) * x for k, x in enumerate(c)), F.zero()))


def test_roots_of_unity():
    assert F.zeta(24) == F.one()
    assert F.zeta(12) == F.rational(-1)
    assert F.zeta(6) * F.zeta(6) == F.rational(-1)
    assert sum((F.zeta(k) for k in range(24)), F.zero()) == 0


@given(elems, elems, elems)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


@given(elems)
def test_inverse(a):
    if not a.is_zero():
        assert a * a.inverse() == F.one()


def test_rational_division():
    assert F.rational(3) / 6 == Fraction(1, 2)
