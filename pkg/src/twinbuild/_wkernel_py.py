"""Pure-Python affine-permutation kernel (fallback for the compiled one).

Elements of the affine symmetric group (and, as the special case of genuine
permutations, the finite symmetric group) are stored as *windows*: the
tuple (u(1), ..., u(n)) of a bijection u: Z -> Z with

    u(j + n) = u(j) + n      and      sum(u(j) - j) = 0.

Generators: s_i for i < n swaps i <-> i+1 (mod n-translates); s_n is the
wrap-around swap of n <-> n+1.  Windows compose as plain functions, length
is the inversion count of the window pair set, and descents read off
adjacent-value comparisons.  All functions are pure and allocation-light;
`twinbuild.coxeter` picks the compiled twin `_wkernel` when it imported
successfully and this module otherwise.
"""

__all__ = ["identity", "gen", "compose", "invert", "length", "right_descents"]


def identity(n):
    """The identity window (1, 2, ..., n)."""
    return tuple(range(1, n + 1))


def gen(i, n):
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
    n = len(u)
    out = [0] * n
    for j in range(n):
        val = v[j]
        r = (val - 1) % n
        m = (val - 1 - r) // n
        out[j] = u[r] + m * n
    return tuple(out)


def invert(u):
    """Window of the inverse function."""
    n = len(u)
    out = [0] * n
    for j in range(n):
        val = u[j]
        r = (val - 1) % n
        m = (val - 1 - r) // n
        out[r] = j + 1 - m * n
    return tuple(out)


def length(u):
    """Coxeter length: number of inversions of the periodic window."""
    n = len(u)
    total = 0
    for a in range(n):
        ua = u[a]
        for b in range(a + 1, n):
            d = u[b] - ua
            if d > 0:
                total += d // n
            else:
                total += (-d) // n + 1
    return total


def right_descents(u):
    """Generators i with length(u s_i) < length(u), as a sorted tuple.

    For windows that are genuine permutations (the finite case) the
    wrap-around generator n never appears.
    """
    n = len(u)
    out = []
    for i in range(1, n):
        if u[i - 1] > u[i]:
            out.append(i)
    if u[n - 1] > u[0] + n:
        out.append(n)
    return tuple(out)
