import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

import sympy

from resgaps.arith.models import SymMatrix, to_rational
from resgaps.errors import NotPositiveDefinite, SingularMatrix

logger = logging.getLogger(__name__)

LowerTriangular = Tuple[Tuple[Fraction, ...], ...]


@lru_cache(maxsize=1024)
def ldlt(m: SymMatrix) -> Tuple[LowerTriangular, Tuple[Fraction, ...]]:
    """Exact LDLᵀ factorization of a positive-definite matrix.

    Args:
        m: Symmetric rational matrix.

    Returns:
        A pair (L, D) with L unit lower triangular and D the pivots, such that
        L·diag(D)·Lᵀ equals m exactly.

    Raises:
        NotPositiveDefinite: If some pivot is not strictly positive.
    """
    size = m.dim
    lower = [[Fraction(0)] * size for _ in range(size)]
    pivots = [Fraction(0)] * size
    for j in range(size):
        pivot = m[j, j] - sum((lower[j][k] ** 2 * pivots[k] for k in range(j)), Fraction(0))
        if pivot <= 0:
            raise NotPositiveDefinite(f"pivot {j} is {pivot}, matrix {m} is not positive-definite")
        pivots[j] = pivot
        lower[j][j] = Fraction(1)
        for i in range(j + 1, size):
            partial = sum((lower[i][k] * lower[j][k] * pivots[k] for k in range(j)), Fraction(0))
            lower[i][j] = (m[i, j] - partial) / pivot
    return tuple(tuple(row) for row in lower), tuple(pivots)


def is_positive_definite(m: SymMatrix) -> bool:
    try:
        ldlt(m)
    except NotPositiveDefinite:
        return False
    return True


def _to_sympy(m: SymMatrix) -> sympy.Matrix:
    return sympy.Matrix(
        m.dim, m.dim, [sympy.Rational(x.numerator, x.denominator) for row in m.entries for x in row]
    )


def _from_sympy(matrix: sympy.Matrix) -> SymMatrix:
    return SymMatrix.of(
        [[to_rational(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]
    )


@lru_cache(maxsize=1024)
def det(m: SymMatrix) -> Fraction:
    return to_rational(_to_sympy(m).det(method="bareiss"))


@lru_cache(maxsize=1024)
def adjugate(m: SymMatrix) -> SymMatrix:
    """Classical adjugate; m·adjugate(m) = det(m)·I also for singular m."""
    if m.dim == 1:
        return SymMatrix.of([[1]])
    return _from_sympy(_to_sympy(m).adjugate())


@lru_cache(maxsize=1024)
def inverse(m: SymMatrix) -> SymMatrix:
    determinant = det(m)
    if determinant == 0:
        raise SingularMatrix(f"matrix {m} is singular")
    return adjugate(m).scaled(1 / determinant)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_rational_square(q: Fraction) -> bool:
    """p/q in lowest terms is a square iff p and q are squares."""
    return q >= 0 and is_square(q.numerator) and is_square(q.denominator)


def floor_sqrt(q: Fraction) -> int:
    """Largest integer n >= 0 with n² <= q (q >= 0)."""
    n = math.isqrt(q.numerator // q.denominator)
    while (n + 1) ** 2 <= q:
        n += 1
    return n


def ceil_sqrt(q: Fraction) -> int:
    """Smallest integer n >= 0 with n² >= q."""
    if q <= 0:
        return 0
    n = floor_sqrt(q)
    return n if n * n == q else n + 1
