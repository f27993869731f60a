# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over prime fields.

This is the hot kernel of every homology computation: subset scans reduce to
many small/medium RREFs over F_p.  Entries are canonical residues in [0, p)
with p < 2^31, so products fit in int64.  The pure-Python fallback in
``golodlab.linalg`` implements the identical algorithm; both produce the
(unique) reduced row echelon form, so results are path-independent.
"""


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p, p prime
    cdef long long t = 0, newt = 1, r = p, newr = a % p
    cdef long long q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(long long[:, ::1] a, long long p):
    """In-place reduced row echelon form mod p; returns the pivot columns."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, v
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                v = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = v
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, n):
                    v = (a[i, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        pivots.append(c)
        r += 1
    return pivots
