"""Veronese embeddings of the buildings into spaces of hermitian
operators.

Spherical case: a subspace V of Q(i)^n maps to the self-adjoint
projector with kernel V, recentred to trace zero; flags map to weighted
sums of their subspace images, and the flag is recoverable from the
eigenspace chain.  Affine case: vertices of the polynomial-side building
map to gauge transforms of the recentred coordinate projectors,
X |-> g X g# + (z d/dz g) g#, with g a unitary loop; the image lives in
the sharp-fixed traceless matrices.

All unitary elements are Q(i)-expressible: permutation/phase matrices
and the loops 1 + (z-1)P for projectors P, plus their products; nothing
here takes square roots.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, NotInImageError
from .exactalg import (
    GaussRat,
    LMat,
    LP_ONE,
    LP_ZERO,
    LaurentPoly,
    QI_ONE,
    QI_ZERO,
    charpoly,
    const_inverse,
    kernel_basis,
    qi_roots,
    rref,
)

__all__ = [
    "SubspaceFlag",
    "subspace",
    "perp",
    "projector_of",
    "spherical_veronese",
    "recover_flag",
    "squared_distance",
    "unitary_loop",
    "sl_loop_pair",
    "is_unitary_loop",
    "gauge",
    "pi_projector",
    "pi_tls",
    "affine_veronese_vertex",
    "barycentric_affine_veronese",
    "caveat_check",
]


def _scalar(x):
    if isinstance(x, GaussRat):
        return x
    return GaussRat(x)


def subspace(vectors):
    """Canonical form of a span: reduced row echelon basis, zero rows
    dropped, as a tuple of coefficient tuples."""
    rows = [[_scalar(x) for x in v] for v in vectors]
    red, pivots = rref(rows)
    return tuple(tuple(red[r]) for r in range(len(pivots)))


def _dim(rows):
    return len(rows)


def _contains(big, small):
    """Is span(small) inside span(big)?  Both in canonical form."""
    if not small:
        return True
    joined = subspace(list(big) + list(small))
    return _dim(joined) == _dim(big)


class SubspaceFlag:
    """A strictly increasing chain of proper nonzero subspaces of
    Q(i)^n, each held in canonical form."""

    __slots__ = ("n", "steps")

    def __init__(self, n, subspaces):
        steps = tuple(subspace(s) for s in subspaces)
        if not steps:
            raise DomainError("a flag needs at least one subspace")
        prev_dim = 0
        for s in steps:
            d = _dim(s)
            if d == 0 or d >= n:
                raise DomainError("flag subspaces must be proper and nonzero")
            if d <= prev_dim:
                raise DomainError("flag dimensions must strictly increase")
            prev_dim = d
        for small, big in zip(steps, steps[1:]):
            if not _contains(big, small):
                raise DomainError("flag subspaces must be nested")
        self.n = n
        self.steps = steps

    @property
    def dims(self):
        return tuple(_dim(s) for s in self.steps)

    def __eq__(self, other):
        if not isinstance(other, SubspaceFlag):
            return NotImplemented
        return self.n == other.n and self.steps == other.steps

    def __hash__(self):
        return hash((self.n, self.steps))

    def __repr__(self):
        return f"<SubspaceFlag n={self.n} dims={self.dims}>"


def perp(v, n=None):
    """Orthogonal complement for <x,y> = sum conj(x_i) y_i.

    Takes a subspace (vectors or canonical rows) and returns canonical
    rows; takes a SubspaceFlag and returns the reversed flag of
    complements."""
    if isinstance(v, SubspaceFlag):
        return SubspaceFlag(v.n, [perp(s, v.n) for s in reversed(v.steps)])
    rows = subspace(v)
    if n is None:
        if not rows:
            raise DomainError("cannot infer the ambient dimension of 0")
        n = len(rows[0])
    if not rows:
        return subspace([[QI_ONE if i == j else QI_ZERO for j in range(n)]
                         for i in range(n)])
    conj_rows = [[x.conj for x in r] for r in rows]
    return subspace(kernel_basis(conj_rows))


def _grid(mat: LMat):
    """Constant LMat -> nested lists of GaussRat."""
    if not mat.is_constant():
        raise DomainError("expected a constant matrix")
    return [[mat[i, j].coeff(0) for j in range(mat.ncols)] for i in range(mat.nrows)]


def projector_of(v) -> LMat:
    """The self-adjoint projector X_V with kernel exactly V (image the
    orthogonal complement): X_V = 1 - A (A*A)^{-1} A* for a basis A."""
    rows = subspace(v)
    k = _dim(rows)
    if k == 0:
        raise DomainError("the zero subspace has no projector here")
    n = len(rows[0])
    if k >= n:
        raise DomainError("the full space has no projector here")
    # A has the basis as columns; G = A* A is the Gram matrix.
    g = [
        [
            sum((rows[a][i].conj * rows[b][i] for i in range(n)), QI_ZERO)
            for b in range(k)
        ]
        for a in range(k)
    ]
    ginv = const_inverse(g)
    p = [
        [
            sum(
                (
                    rows[a][i] * ginv[a][b] * rows[b][j].conj
                    for a in range(k)
                    for b in range(k)
                ),
                QI_ZERO,
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    x = [
        [(QI_ONE if i == j else QI_ZERO) - p[i][j] for j in range(n)]
        for i in range(n)
    ]
    return LMat(x)


def _recentered(x: LMat) -> LMat:
    """Subtract (trace/n) * identity."""
    n = x.nrows
    t = x.trace()
    shift = t * LaurentPoly({0: GaussRat(Fraction(1, n))})
    return x - LMat.diag([shift] * n)


def spherical_veronese(flag: SubspaceFlag, weights) -> LMat:
    """Weighted barycentre of the recentred projectors of the flag's
    subspaces; weights are positive rationals summing to 1."""
    ws = [_scalar(w) for w in weights]
    if len(ws) != len(flag.steps):
        raise DomainError("one weight per flag subspace")
    total = QI_ZERO
    for w in ws:
        if w.im or w.re <= 0:
            raise DomainError("weights must be positive rationals")
        total = total + w
    if total != QI_ONE:
        raise DomainError("weights must sum to 1")
    n = flag.n
    acc = LMat.zeros(n, n)
    for w, step in zip(ws, flag.steps):
        acc = acc + _recentered(projector_of(step)).scale(LaurentPoly({0: w}))
    return acc


def squared_distance(x: LMat, y: LMat):
    """Exact squared euclidean distance tr((X-Y)* (X-Y)) between
    constant hermitian matrices."""
    d = x - y
    return (d.star() @ d).trace().coeff(0)


def recover_flag(x: LMat) -> SubspaceFlag:
    """The flag of cumulative eigenspaces of a constant hermitian matrix
    with rational spectrum, eigenvalues ascending; inverts
    spherical_veronese whenever the weights have distinct partial sums.
    """
    if x.nrows != x.ncols:
        raise DomainError("recover_flag needs a square matrix")
    grid = _grid(x)
    n = x.nrows
    roots = qi_roots(charpoly(grid))
    if len(roots) < n:
        raise NotInImageError("characteristic polynomial does not split over Q(i)")
    if any(r.im for r in roots):
        raise NotInImageError("complex eigenvalues: not a hermitian image")
    distinct = sorted({r.re for r in roots})
    if len(distinct) < 2:
        raise NotInImageError("scalar matrix carries no flag")
    accumulated = []
    total = 0
    steps = []
    for lam in distinct:
        shifted = [
            [grid[i][j] - (GaussRat(lam) if i == j else QI_ZERO) for j in range(n)]
            for i in range(n)
        ]
        ker = kernel_basis(shifted)
        if not ker:
            raise NotInImageError("eigenvalue without eigenvector")
        total += len(ker)
        accumulated.extend(ker)
        if total < n:
            steps.append(subspace(accumulated))
    if total != n:
        raise NotInImageError("matrix is not diagonalizable over Q(i)")
    return SubspaceFlag(n, steps)


# ---------------------------------------------------------------------------
# Unitary loops and the affine Veronese map
# ---------------------------------------------------------------------------


def _is_projector(p: LMat) -> bool:
    return (
        p.nrows == p.ncols
        and p.is_constant()
        and p @ p == p
        and p.star() == p
    )


def unitary_loop(p: LMat) -> LMat:
    """The loop g_P = 1 + (z-1) P for a constant self-adjoint projector
    P; satisfies g_P sharp(g_P) = 1 and det g_P = z^rank(P)."""
    if not _is_projector(p):
        raise DomainError("unitary_loop needs a constant self-adjoint projector")
    zm1 = LaurentPoly({1: QI_ONE, 0: -QI_ONE})
    return LMat.identity(p.nrows) + p.scale(zm1)


def sl_loop_pair(p: LMat, q: LMat) -> LMat:
    """The determinant-1 unitary loop g_P g_Q^{-1} for projectors of
    equal rank."""
    if not (_is_projector(p) and _is_projector(q)):
        raise DomainError("sl_loop_pair needs two projectors")
    if p.trace() != q.trace():
        raise DomainError("sl_loop_pair needs projectors of equal rank")
    return unitary_loop(p) @ unitary_loop(q).inv()


def is_unitary_loop(g: LMat) -> bool:
    return g.nrows == g.ncols and g @ g.sharp() == LMat.identity(g.nrows)


def gauge(g: LMat, x: LMat) -> LMat:
    """The gauge action g * X = g X g# + (z d/dz g) g# on sharp-fixed
    traceless matrices; a left group action of the unitary loops whose
    determinant has no winding.

    The winding restriction is forced: the derivative term contributes
    trace z d/dz log det(g), which is exactly the winding number of the
    determinant, so a loop like diag(z, 1) would push X out of the
    traceless space.  Determinant-one loops (and constant unitaries)
    all pass.
    """
    if not is_unitary_loop(g):
        raise DomainError("gauge needs a unitary loop")
    if g.det().val0() != 0:
        raise DomainError(
            "gauge needs a winding-free determinant; "
            "pair projector loops into determinant-one products first"
        )
    if x.sharp() != x or x.trace() != LP_ZERO:
        raise DomainError("gauge acts on sharp-fixed traceless matrices")
    gs = g.sharp()
    return g @ x @ gs + g.z_ddz() @ gs


def pi_projector(n, k) -> LMat:
    """The coordinate projector onto span(e_1..e_k)."""
    if not 0 <= k <= n:
        raise DomainError("projector rank out of range")
    return LMat.diag([LP_ONE] * k + [LP_ZERO] * (n - k))


def pi_tls(n, k) -> LMat:
    """The recentred coordinate projector Pi_k - (k/n) 1."""
    shift = LaurentPoly({0: GaussRat(Fraction(k, n))})
    return pi_projector(n, k) - LMat.diag([shift] * n)


def affine_veronese_vertex(g: LMat, k) -> LMat:
    """Image of the type-k vertex moved by the unitary loop g:
    gauge(g, Pi_k^tls)."""
    n = g.nrows
    if not 0 <= k < n:
        raise DomainError("vertex type out of range")
    return gauge(g, pi_tls(n, k))


def barycentric_affine_veronese(g: LMat, weights) -> LMat:
    """Convex combination over vertex types sharing one loop g: the
    gauge transform of sum_k w_k Pi_k^tls; weights is a mapping
    type -> positive rational, summing to 1."""
    n = g.nrows
    total = QI_ZERO
    acc = LMat.zeros(n, n)
    for k, w in sorted(weights.items()):
        if not 0 <= k < n:
            raise DomainError("vertex type out of range")
        w = _scalar(w)
        if w.im or w.re <= 0:
            raise DomainError("weights must be positive rationals")
        total = total + w
        acc = acc + pi_tls(n, k).scale(LaurentPoly({0: w}))
    if total != QI_ONE:
        raise DomainError("weights must sum to 1")
    return gauge(g, acc)


# ---------------------------------------------------------------------------
# The eigenvalue caveat
# ---------------------------------------------------------------------------


def _support_window(x: LMat):
    lo = hi = 0
    for i in range(x.nrows):
        for j in range(x.ncols):
            for e in x[i, j].coeffs:
                lo = min(lo, e)
                hi = max(hi, e)
    return lo, hi


def caveat_check(n, bound, x: LMat | None = None) -> bool:
    """Does z d/dz - X - lambda have trivial interior-window kernel for
    every candidate eigenvalue lambda in (1/n) Z with |lambda| <= bound?

    The default X = diag(a,..,a,(1-n)a) with a = z + 1/z is the standard
    non-image example: the answer is expected True (no eigenvectors, so
    X represents no vertex).  Feeding a genuine vertex image such as
    pi_tls(n, k) returns False, because its eigenvectors z^m e_j are
    supported on single powers and survive the truncation.

    Vectors are truncated to z-support [-bound+2, bound-2] and the
    equations cover the full image window, so boundary artifacts cannot
    fake a kernel.
    """
    if x is None:
        a = LaurentPoly({1: QI_ONE, -1: QI_ONE})
        x = LMat.diag([a] * (n - 1) + [a * (1 - n)])
    if x.nrows != n or x.ncols != n:
        raise DomainError("matrix size mismatch")
    if x.sharp() != x or x.trace() != LP_ZERO:
        raise DomainError("caveat_check needs a sharp-fixed traceless matrix")
    lo, hi = -bound + 2, bound - 2
    if lo > hi:
        raise DomainError("bound too small for an interior window")
    elo, ehi = _support_window(x)
    out_lo, out_hi = lo + min(elo, 0), hi + max(ehi, 0)
    unknowns = [(m, i) for m in range(lo, hi + 1) for i in range(n)]
    col_of = {u: c for c, u in enumerate(unknowns)}
    for j in range(-n * bound, n * bound + 1):
        lam = GaussRat(Fraction(j, n))
        rows = [
            [QI_ZERO] * len(unknowns)
            for _ in range((out_hi - out_lo + 1) * n)
        ]

        def row_of(m, i):
            return (m - out_lo) * n + i

        for (m, i), c in col_of.items():
            rows[row_of(m, i)][c] = rows[row_of(m, i)][c] + GaussRat(m) - lam
            for r in range(n):
                for e, coeff in x[r, i].coeffs.items():
                    rows[row_of(m + e, r)][c] = rows[row_of(m + e, r)][c] - coeff
        if kernel_basis(rows):
            return False
    return True
