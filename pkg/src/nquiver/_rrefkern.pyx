# cython: boundscheck=False, wraparound=False, cdivision=True
"""Reduced row echelon over F_p on machine integers (p < 2^31).

Compiled fast path behind nquiver.linalg; the pure-Python routine there is
the reference implementation and the fallback when this module is missing.
"""

from cpython cimport array
import array


cdef long long pow_mod(long long base, long long exp, long long m):
    cdef long long result = 1
    base %= m
    while exp > 0:
        if exp & 1:
            result = result * base % m
        base = base * base % m
        exp >>= 1
    return result


def rref_mod_p(list rows, Py_ssize_t ncols, long long p):
    """Return (rref rows, pivot columns) of an integer matrix modulo p."""
    cdef Py_ssize_t m = len(rows)
    if m == 0 or ncols == 0:
        return [], []
    flat = []
    for row in rows:
        flat.extend(row)
    cdef array.array buf = array.array("q", [v % p for v in flat])
    cdef long long[::1] a = buf
    cdef Py_ssize_t r = 0, i, j, k, piv
    cdef long long inv, factor, tmp
    pivots = []
    for j in range(ncols):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i * ncols + j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(ncols):
                tmp = a[r * ncols + k]
                a[r * ncols + k] = a[piv * ncols + k]
                a[piv * ncols + k] = tmp
        inv = pow_mod(a[r * ncols + j], p - 2, p)
        for k in range(j, ncols):
            a[r * ncols + k] = a[r * ncols + k] * inv % p
        for i in range(m):
            if i != r and a[i * ncols + j] != 0:
                factor = a[i * ncols + j]
                for k in range(j, ncols):
                    a[i * ncols + k] = (a[i * ncols + k] - factor * a[r * ncols + k]) % p
                    if a[i * ncols + k] < 0:
                        a[i * ncols + k] += p
        pivots.append(j)
        r += 1
    out = [[a[i * ncols + k] for k in range(ncols)] for i in range(r)]
    return out, pivots
