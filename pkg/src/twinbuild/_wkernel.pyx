# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled affine-permutation kernel; mirrors `_wkernel_py` exactly.

Same window representation and API as the pure-Python fallback; see that
module's docstring for the conventions.  The hot loops (composition and
inversion counting) run on C integer arrays.
"""

from libc.stdlib cimport free, malloc

__all__ = ["identity", "gen", "compose", "invert", "length", "right_descents"]


def identity(int n):
    """The identity window (1, 2, ..., n)."""
    return tuple(range(1, n + 1))


def gen(int i, int n):
    """Window of the generator s_i (1 <= i <= n; i = n is the affine node)."""
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} out of range 1..{n}")
    u = list(range(1, n + 1))
    if i < n:
        u[i - 1], u[i] = u[i], u[i - 1]
    else:
        u[0] = 0
        u[n - 1] = n + 1
    return tuple(u)


def compose(u, v):
    """Window of the composite function u o v (first v, then u)."""
    cdef int n = len(u)
    cdef long *uu = <long *> malloc(n * sizeof(long))
    cdef long *out = <long *> malloc(n * sizeof(long))
    cdef int j
    cdef long val, r, m
    try:
        for j in range(n):
            uu[j] = u[j]
        for j in range(n):
            val = v[j]
            r = (val - 1) % n
            if r < 0:
                r += n
            m = (val - 1 - r) // n
            out[j] = uu[r] + m * n
        return tuple(out[j] for j in range(n))
    finally:
        free(uu)
        free(out)


def invert(u):
    """Window of the inverse function."""
    cdef int n = len(u)
    cdef long *out = <long *> malloc(n * sizeof(long))
    cdef int j
    cdef long val, r, m
    try:
        for j in range(n):
            val = u[j]
            r = (val - 1) % n
            if r < 0:
                r += n
            m = (val - 1 - r) // n
            out[r] = j + 1 - m * n
        return tuple(out[j] for j in range(n))
    finally:
        free(out)


def length(u):
    """Coxeter length: number of inversions of the periodic window."""
    cdef int n = len(u)
    cdef long *uu = <long *> malloc(n * sizeof(long))
    cdef long total = 0, d
    cdef int a, b
    try:
        for a in range(n):
            uu[a] = u[a]
        for a in range(n):
            for b in range(a + 1, n):
                d = uu[b] - uu[a]
                if d > 0:
                    total += d // n
                else:
                    total += (-d) // n + 1
        return total
    finally:
        free(uu)


def right_descents(u):
    """Generators i with length(u s_i) < length(u), as a sorted tuple."""
    cdef int n = len(u)
    cdef int i
    out = []
    for i in range(1, n):
        if u[i - 1] > u[i]:
            out.append(i)
    if u[n - 1] > u[0] + n:
        out.append(n)
    return tuple(out)
