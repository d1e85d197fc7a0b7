from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from lgk.lattice import determinant, int_inverse, kernel_basis, mat_mul, mat_vec, smith_normal_form, solve_mod

small = st.integers(-6, 6)


def matrices(max_m=4, max_n=4):
    return st.integers(1, max_m).flatmap(
        lambda m: st.integers(1, max_n).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    )


@given(matrices())
def test_snf_decomposition(A):
    D, U, V = smith_normal_form(A)
    assert mat_mul(mat_mul(U, A), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


@given(matrices())
def test_snf_matches_sympy(A):
    D, _, _ = smith_normal_form(A)
    S = sympy_snf(Matrix(A), domain=ZZ)
    ours = [D[i][i] for i in range(min(len(D), len(D[0])))]
    theirs = [abs(int(S[i, i])) for i in range(min(S.shape))]
    assert sorted(x for x in ours if x) == sorted(x for x in theirs if x)


@given(matrices())
def test_kernel_basis(A):
    for v in kernel_basis(A):
        assert mat_vec(A, v) == (0,) * len(A)


def test_int_inverse():
    A = ((2, 1), (1, 1))
    assert mat_mul(A, int_inverse(A)) == ((1, 0), (0, 1))


def test_solve_mod():
    sols = solve_mod(((2,),), (0,), 4)
    assert sols == [(0,), (2,)]
