"""Small exact linear-algebra kit: integer Hermite forms and rational solving.

Everything here works on plain lists/tuples of ``int`` or ``Fraction``; sizes
are tiny (n is the ambient dimension), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntRow = Sequence[int]
FracRow = Sequence[Fraction]


def row_hnf(rows: Sequence[IntRow], ncols: int) -> list[list[int]]:
    """Canonical row Hermite normal form of a full-column-rank integer matrix.

    Returns an upper-triangular ``ncols x ncols`` basis with positive pivots
    and the entries above each pivot reduced into ``[0, pivot)``.  Raises
    ``ValueError`` if the rows do not span a rank-``ncols`` lattice.
    """
    mat = [list(map(int, r)) for r in rows if any(r)]
    for r in mat:
        if len(r) != ncols:
            raise ValueError("row length mismatch")
    pivot = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(pivot, len(mat)) if mat[i][col] != 0]
            if not nz:
                raise ValueError("matrix does not have full column rank")
            if len(nz) == 1:
                break
            nz.sort(key=lambda i: abs(mat[i][col]))
            i0, i1 = nz[0], nz[1]
            q = mat[i1][col] // mat[i0][col]
            mat[i1] = [a - q * b for a, b in zip(mat[i1], mat[i0])]
        i = nz[0]
        mat[pivot], mat[i] = mat[i], mat[pivot]
        if mat[pivot][col] < 0:
            mat[pivot] = [-a for a in mat[pivot]]
        for j in range(pivot):
            q = mat[j][col] // mat[pivot][col]
            if q:
                mat[j] = [a - q * b for a, b in zip(mat[j], mat[pivot])]
        pivot += 1
    return [mat[i] for i in range(ncols)]


def invert(matrix: Sequence[FracRow]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = Fraction(1) / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def solve(matrix: Sequence[FracRow], rhs: FracRow) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly; the matrix must be invertible."""
    inv = invert(matrix)
    return [sum((r[j] * rhs[j] for j in range(len(rhs))), Fraction(0)) for r in inv]


def det(matrix: Sequence[FracRow]) -> Fraction:
    n = len(matrix)
    mat = [[Fraction(x) for x in row] for row in matrix]
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            sign = -sign
        out *= mat[col][col]
        inv_p = Fraction(1) / mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col]:
                f = mat[i][col] * inv_p
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[col])]
    return out * sign


def rowvec_times(vec: FracRow, matrix: Sequence[FracRow]) -> list[Fraction]:
    """Row vector times matrix."""
    n = len(matrix[0])
    return [sum((vec[i] * matrix[i][j] for i in range(len(vec))), Fraction(0))
            for j in range(n)]


def vec_gcd(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g
