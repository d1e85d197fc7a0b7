import pytest
from hypothesis import given, strategies as st

from lgk.rootdatum import build_from_type
from lgk.weyl import compose, enumerate_group, from_word, invert, longest_element, reflect, reduced_words

from strategies import data, words


def test_simple_reflection_inversion_set():
    d = build_from_type("A2")
    assert reflect(d, 0).inversion_set == {d.simple[0]}


def test_a2_longest():
    d = build_from_type("A2")
    w0 = longest_element(d)
    assert w0.length == 3
    assert w0 == from_word(d, [0, 1, 0])
    assert w0.inversion_set == set(d.positive)


def test_b2_s1s2_inverts_two_roots():
    d = build_from_type("B2")
    w = from_word(d, [0, 1])
    # frozen by direct enumeration of w^-1 on the 4 positive roots
    assert len(w.inversion_set) == 2


def test_c2_longest_is_minus_one():
    d = build_from_type("C2")
    w0 = longest_element(d)
    assert w0.length == 4
    assert w0.char_matrix == ((-1, 0), (0, -1))
    brute = [w for w in enumerate_group(d) if all(w.act_char(x) == tuple(-c for c in x) for x in d.roots)]
    assert brute == [w0]


@pytest.mark.parametrize("name,order", [("A1", 2), ("A3", 24), ("B3", 48), ("G2", 12), ("D4", 192), ("B4", 384)])
def test_group_orders(name, order):
    assert len(enumerate_group(build_from_type(name))) == order


@given(data(["A1", "A2", "A3", "B2", "C2", "G2", "B3"]))
def test_length_is_inversion_count(d):
    for w in enumerate_group(d):
        assert w.length == len(w.inversion_set) == len(w.word)


@given(data(["A2", "A3", "B2", "G2", "D4"]))
def test_minus_w0_is_diagram_automorphism(d):
    w0 = longest_element(d)
    for i in range(len(d.simple)):
        conj = compose(compose(w0, reflect(d, i)), w0)
        assert conj.length == 1


@given(st.data())
def test_words_and_inverse(dd):
    d = dd.draw(data())
    w = from_word(d, dd.draw(words(d)))
    assert compose(w, invert(w)).is_identity()
    for word in reduced_words(w, limit=10):
        assert from_word(d, word) == w and len(word) == w.length
