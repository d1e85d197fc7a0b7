"""Integer matrix helpers: products, exact inverses, Smith normal form, kernels.

Matrices are tuples of row tuples of Python ints. Everything is exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def transpose(A: Sequence[Sequence]) -> tuple:
    if not A:
        return ()
    return tuple(zip(*A))


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def mat_vec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(k: int, v: Sequence[int]) -> Vector:
    return tuple(k * a for a in v)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_pow(A: Matrix, k: int) -> Matrix:
    n = len(A)
    if k < 0:
        A, k = int_inverse(A), -k
    out = identity(n)
    for _ in range(k):
        out = mat_mul(out, A)
    return out


def matrix_order(A: Matrix, bound: int = 64) -> int:
    """Smallest k >= 1 with A^k = I; raises ValueError past ``bound``."""
    n = len(A)
    I = identity(n)
    P = A
    for k in range(1, bound + 1):
        if P == I:
            return k
        P = mat_mul(P, A)
    raise ValueError(f"matrix order exceeds {bound}")


def rational_solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` over Q for square invertible ``A``."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def rational_inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    cols = [rational_solve(A, [int(i == j) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def int_inverse(A: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    inv = rational_inverse(A)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def determinant(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det *= p
        for r in range(col + 1, n):
            f = M[r][col] / p
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return int(det)


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U A V = D`` diagonal, ``U`` and ``V`` unimodular.

    Diagonal entries are non-negative and each divides the next; zeros come last.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, r)) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for M in (D, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    changed = changed or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    changed = changed or D[t][j] != 0
            if changed:
                cands = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                cands += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return as_matrix(D), as_matrix(U), as_matrix(V)


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form of ``A``."""
    if not A or not A[0]:
        return []
    D, _, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def kernel_basis(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """A Z-basis of the saturated kernel ``{x in Z^n : A x = 0}``."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    D, _, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    return [tuple(V[i][j] for i in range(n)) for j in range(r, n)]


def solve_mod(A: Sequence[Sequence[int]], b: Sequence[int], N: int) -> list[Vector]:
    """All solutions ``x in (Z/N)^n`` of ``A x = b (mod N)``, sorted lexicographically."""
    m = len(A)
    n = len(A[0]) if m else 0
    D, U, V = smith_normal_form(A)
    ub = mat_vec(U, b)
    per_coord: list[list[int]] = []
    for k in range(n):
        d = D[k][k] if k < m else 0
        rhs = ub[k] % N if k < m else 0
        sols = [y for y in range(N) if (d * y - rhs) % N == 0]
        if not sols:
            return []
        per_coord.append(sols)
    for k in range(n, m):
        if ub[k] % N:
            return []
    out = set()
    for y in itertools.product(*per_coord):
        out.add(tuple(x % N for x in mat_vec(V, y)))
    return sorted(out)
