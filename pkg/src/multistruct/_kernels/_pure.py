"""Pure-Python kernels: sparse integer polynomial products and integer rank.

These are the only hot paths in the engine.  Polynomials arrive here with
denominators already cleared, as dicts mapping exponent tuples to nonzero
Python ints.  Matrices are lists of lists of Python ints.  Everything is
exact; the Bareiss elimination divides only where the division is exact.
"""

from __future__ import annotations


def mul_int_dicts(a: dict, b: dict) -> dict:
    """Product of two sparse integer-coefficient polynomials.

    Keys are equal-length exponent tuples, values are nonzero ints.  The
    result is in the same form (no zero coefficients stored).
    """
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(key, 0) + ca * cb
            if c:
                out[key] = c
            else:
                del out[key]
    return out


def bareiss_rank(rows: list) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = -1
        for i in range(row, nrows):
            if m[i][col]:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != row:
            m[row], m[pivot] = m[pivot], m[row]
        piv = m[row][col]
        for i in range(row + 1, nrows):
            mic = m[i][col]
            for j in range(col + 1, ncols):
                m[i][j] = (piv * m[i][j] - mic * m[row][j]) // prev
            m[i][col] = 0
        prev = piv
        row += 1
        if row == nrows:
            break
    return row


def bareiss_det(rows: list) -> int:
    """Determinant of a square integer matrix, exactly (Bareiss).

    Row swaps flip the sign; a zero pivot column makes the determinant 0.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    prev = 1
    sign = 1
    for col in range(n):
        pivot = -1
        for i in range(col, n):
            if m[i][col]:
                pivot = i
                break
        if pivot < 0:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        piv = m[col][col]
        for i in range(col + 1, n):
            mic = m[i][col]
            for j in range(col + 1, n):
                m[i][j] = (piv * m[i][j] - mic * m[col][j]) // prev
            m[i][col] = 0
        prev = piv
    return sign * m[n - 1][n - 1]
