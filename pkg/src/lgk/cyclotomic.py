"""Exact arithmetic in the cyclotomic field Q(zeta_N) and small matrices over it.

Elements are coefficient vectors in the power basis 1, z, ..., z^(phi-1),
reduced modulo the N-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .lattice import rational_solve


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1] // den[-1]
        out[k] = q
        for j, c in enumerate(den):
            num[k + j] -= q * c
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the N-th cyclotomic polynomial."""
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CycField:
    """The field Q(zeta_N)."""

    _instances: dict[int, "CycField"] = {}

    def __new__(cls, N: int):
        if N in cls._instances:
            return cls._instances[N]
        self = super().__new__(cls)
        self.N = N
        self.poly = cyclotomic_polynomial(N)
        self.phi = len(self.poly) - 1
        # x^k reduced, for k < max(N, 2 phi)
        red = []
        cur = [0] * self.phi
        cur[0] = 1
        for _ in range(max(N, 2 * self.phi)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.poly)]
        self._red = red
        cls._instances[N] = self
        return self

    def __reduce__(self):
        return (CycField, (self.N,))

    def __repr__(self) -> str:
        return f"Q(zeta_{self.N})"

    def zero(self) -> "Cyc":
        return Cyc(self, (0,) * self.phi)

    def one(self) -> "Cyc":
        return self.rational(1)

    def rational(self, q) -> "Cyc":
        return Cyc(self, (q,) + (0,) * (self.phi - 1))

    def zeta(self, k: int = 1) -> "Cyc":
        return Cyc(self, self._red[k % self.N])


class Cyc:
    __slots__ = ("F", "c")

    def __init__(self, F: CycField, coeffs: Sequence):
        self.F = F
        self.c = tuple(coeffs)

    def _coerce(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            if other.F is not self.F:
                raise ValueError("elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.F.rational(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyc(self.F, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.F, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyc(self.F, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.F, tuple(a * other for a in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            q = o.c[0]
            return Cyc(self.F, tuple(a * q for a in self.c))
        if self.is_rational():
            q = self.c[0]
            return Cyc(self.F, tuple(a * q for a in o.c))
        phi = self.F.phi
        red = self.F._red
        acc = [0] * phi
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if not b:
                    continue
                ab = a * b
                for k, r in enumerate(red[i + j]):
                    if r:
                        acc[k] += ab * r
        return Cyc(self.F, acc)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.F.rational(Fraction(1) / self.c[0])
        phi = self.F.phi
        # columns of the multiplication-by-self matrix
        cols = [(self * self.F.zeta(j)).c for j in range(phi)]
        M = [[cols[j][i] for j in range(phi)] for i in range(phi)]
        e0 = [1] + [0] * (phi - 1)
        return Cyc(self.F, [_norm(x) for x in rational_solve(M, e0)])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.F.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.F is other.F and self.c == other.c

    def __hash__(self):
        return hash((self.F.N, tuple(Fraction(x) for x in self.c)))

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if k == 0 else f"{a}*z^{k}")
        return "+".join(terms) if terms else "0"


def _norm(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


# -- matrices -----------------------------------------------------------------

CMatrix = list  # list of lists of Cyc


def cmat_identity(F: CycField, n: int) -> CMatrix:
    return [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]


def cmat_zero(F: CycField, n: int, m: int | None = None) -> CMatrix:
    return [[F.zero() for _ in range(m if m is not None else n)] for _ in range(n)]


def cmat_from_int(F: CycField, A: Sequence[Sequence]) -> CMatrix:
    return [[F.rational(x) for x in row] for row in A]


def cmat_mul(A: CMatrix, B: CMatrix) -> CMatrix:
    n, k, m = len(A), len(B), len(B[0])
    F = A[0][0].F
    out = [[F.zero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        row = out[i]
        for j in range(k):
            a = A[i][j]
            if a.is_zero():
                continue
            Bj = B[j]
            for l in range(m):
                b = Bj[l]
                if not b.is_zero():
                    row[l] = row[l] + a * b
    return out


def cmat_add(A: CMatrix, B: CMatrix) -> CMatrix:
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def cmat_sub(A: CMatrix, B: CMatrix) -> CMatrix:
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def cmat_scale(q, A: CMatrix) -> CMatrix:
    return [[q * a for a in r] for r in A]


def cmat_transpose(A: CMatrix) -> CMatrix:
    return [list(r) for r in zip(*A)]


def cmat_eq(A: CMatrix, B: CMatrix) -> bool:
    return len(A) == len(B) and all(
        len(r) == len(s) and all(a == b for a, b in zip(r, s)) for r, s in zip(A, B)
    )


def cmat_is_zero(A: CMatrix) -> bool:
    return all(a.is_zero() for r in A for a in r)


def cmat_bracket(A: CMatrix, B: CMatrix) -> CMatrix:
    return cmat_sub(cmat_mul(A, B), cmat_mul(B, A))


def cmat_exp_nilpotent(X: CMatrix) -> CMatrix:
    """exp(X) for nilpotent X (series terminates)."""
    n = len(X)
    F = X[0][0].F
    out = cmat_identity(F, n)
    term = cmat_identity(F, n)
    for k in range(1, n + 1):
        term = cmat_scale(Fraction(1, k), cmat_mul(term, X))
        if cmat_is_zero(term):
            return out
        out = cmat_add(out, term)
    if not cmat_is_zero(cmat_mul(term, X)):
        raise ValueError("matrix is not nilpotent")
    return out


def cmat_inverse(A: CMatrix) -> CMatrix:
    """Gauss-Jordan inverse over the field."""
    n = len(A)
    F = A[0][0].F
    M = [list(r) + [F.one() if i == j else F.zero() for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col].inverse()
        M[col] = [x * p for x in M[col]]
        for r in range(n):
            if r != col and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [r[n:] for r in M]


def cmat_det(A: CMatrix):
    n = len(A)
    F = A[0][0].F
    M = [list(r) for r in A]
    det = F.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
        if piv is None:
            return F.zero()
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det = det * p
        pinv = p.inverse()
        for r in range(col + 1, n):
            if not M[r][col].is_zero():
                f = M[r][col] * pinv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


def cmat_diag(entries: Sequence[Cyc]) -> CMatrix:
    F = entries[0].F
    n = len(entries)
    return [[entries[i] if i == j else F.zero() for j in range(n)] for i in range(n)]


def cmat_repr(A: CMatrix) -> list[list[str]]:
    return [[repr(a) for a in r] for r in A]
