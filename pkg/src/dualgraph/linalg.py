"""Fraction-free integer linear algebra.

Everything here works on plain lists of Python ints, so results are exact no
matter how large the entries grow.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[int]]


def _copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in m]


def _check_square(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    return n


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss elimination with row pivoting.

    The empty matrix has determinant 1.
    """
    n = _check_square(m)
    a = _copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    if n == 0:
        return 1
    return sign * a[n - 1][n - 1]


def leading_minors(m: Sequence[Sequence[int]]) -> List[int]:
    """Leading principal minors, computed until the first one that vanishes.

    Bareiss elimination without pivoting leaves the k-th leading principal
    minor on the diagonal at step k, so no minor is recomputed from scratch.
    The returned list is shorter than ``len(m)`` only if its last entry is 0.
    """
    n = _check_square(m)
    a = _copy(m)
    minors: List[int] = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return minors


def solve(m: Sequence[Sequence[int]], b: Sequence[int]) -> List[Fraction]:
    """Solve ``m x = b`` exactly.

    Forward elimination is fraction-free on the augmented matrix; only the
    back substitution touches rationals. Raises ``ZeroDivisionError`` when
    ``m`` is singular.
    """
    n = _check_square(m)
    if len(b) != n:
        raise ValueError("right-hand side has wrong length")
    a = [list(row) + [rhs] for row, rhs in zip(m, b)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    break
            else:
                raise ZeroDivisionError("singular matrix")
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    x: List[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(a[i][n])
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return x
