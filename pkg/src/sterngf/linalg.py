# Exact linear algebra helpers: dense Gaussian elimination over Fraction,
# fraction-free Bareiss elimination over the integers, and Lagrange
# interpolation.  Sizes here are moderate (transfer-matrix solves), so
# simplicity and exactness win over asymptotics.

from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ValueError):
    pass


def linsolve(A: list[list], b: list) -> list[Fraction]:
    """Solve A x = b exactly over the rationals.

    A must be square and nonsingular; raises SingularMatrixError otherwise.
    Pivoting picks the largest available nonzero entry in the column.
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("linsolve needs a square system")
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(M[r][col]))
        if M[piv][col] == 0:
            raise SingularMatrixError(f"singular at column {col}")
        M[col], M[piv] = M[piv], M[col]
        pval = M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / pval
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def bareiss_solve_last(M: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination of an n x (n+1) augmented integer system.

    Returns (det A, det A_last) where A is the left n x n block and A_last is
    A with its *last* column replaced by the augmented column, so that the
    last unknown is det A_last / det A.  Only row pivoting is used; all
    divisions are exact (Bareiss).
    """
    A = [list(row) for row in M]
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if A[r][k] != 0), None)
        if piv is None:
            return 0, 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n + 1):
                A[r][c] = (A[r][c] * A[k][k] - A[r][k] * A[k][c]) // prev
            A[r][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1], sign * A[n - 1][n]


def lagrange_interpolate(points: list[int], values: list) -> list:
    """Coefficients (ascending, Fractions) of the unique polynomial of degree
    < len(points) through the given (point, value) pairs."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(points, values)):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis[:]
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        w = Fraction(yi) / denom
        for k in range(len(basis)):
            coeffs[k] += w * basis[k]
    return coeffs
