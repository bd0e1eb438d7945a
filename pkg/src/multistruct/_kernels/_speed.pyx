# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled kernels: sparse integer polynomial products and integer rank.

Same semantics as `_pure`; coefficients stay arbitrary-precision Python
ints, the speedup comes from typed loops and C-level tuple construction.
"""

from cpython.tuple cimport PyTuple_New, PyTuple_GET_ITEM, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


def mul_int_dicts(dict a, dict b):
    """Product of two sparse integer-coefficient polynomials."""
    cdef dict out = {}
    cdef tuple ea, eb, key
    cdef object ca, cb, c, prev, xi, yi, s
    cdef Py_ssize_t i, n
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in b.items():
            key = PyTuple_New(n)
            for i in range(n):
                xi = <object>PyTuple_GET_ITEM(ea, i)
                yi = <object>PyTuple_GET_ITEM(eb, i)
                s = xi + yi
                Py_INCREF(s)
                PyTuple_SET_ITEM(key, i, s)
            prev = out.get(key)
            if prev is None:
                out[key] = ca * cb
            else:
                c = prev + ca * cb
                if c:
                    out[key] = c
                else:
                    del out[key]
    return out


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    cdef list m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    cdef Py_ssize_t nrows = len(m), ncols = len(m[0])
    cdef Py_ssize_t row = 0, col, i, j, pivot
    cdef object prev = 1, piv, mic
    cdef list ri, rr
    for col in range(ncols):
        pivot = -1
        for i in range(row, nrows):
            if (<list>m[i])[col]:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != row:
            m[row], m[pivot] = m[pivot], m[row]
        rr = <list>m[row]
        piv = rr[col]
        for i in range(row + 1, nrows):
            ri = <list>m[i]
            mic = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = (piv * ri[j] - mic * rr[j]) // prev
            ri[col] = 0
        prev = piv
        row += 1
        if row == nrows:
            break
    return row


def bareiss_det(rows):
    """Determinant of a square integer matrix, exactly (Bareiss)."""
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t n = len(m)
    if n == 0:
        return 1
    for r in m:
        if len(<list>r) != n:
            raise ValueError("determinant needs a square matrix")
    cdef Py_ssize_t col, i, j, pivot
    cdef object prev = 1, piv, mic
    cdef int sign = 1
    cdef list ri, rc
    for col in range(n):
        pivot = -1
        for i in range(col, n):
            if (<list>m[i])[col]:
                pivot = i
                break
        if pivot < 0:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        rc = <list>m[col]
        piv = rc[col]
        for i in range(col + 1, n):
            ri = <list>m[i]
            mic = ri[col]
            for j in range(col + 1, n):
                ri[j] = (piv * ri[j] - mic * rc[j]) // prev
            ri[col] = 0
        prev = piv
    return sign * (<list>m[n - 1])[n - 1]
