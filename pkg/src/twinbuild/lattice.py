"""Lattices over Q(i)[z] (plus side) and Q(i)[1/z] (minus side) inside the
Laurent vector space, their canonical forms, projective classes, types,
incidence, and the projective-line charts on panels.

The minus side reuses the plus-side code through the substitution z -> 1/z;
module-level computations (canonical forms, membership, incidence, charts)
are class-level and side-symmetric.  Ordered-basis conventions (which
columns carry the z-marks in a chamber chain) differ between the sides so
that each standard chain is stabilized by its Borel subgroup; see
vertex_classes_of_basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotInvertibleError
from .exactalg import (
    GaussRat,
    LMat,
    LaurentPoly,
    QI_ONE,
    QI_ZERO,
    Z,
    divexact,
    poly_divmod,
    rref,
    solve_right,
    zpow,
)

INF = math.inf

__all__ = [
    "Lattice",
    "LatticeClass",
    "standard_vertex_mat",
    "canonical_lattice",
    "canonical_class",
    "type_of",
    "incident",
    "member",
    "module_contains",
    "lattice_class_of_cols",
    "vertex_classes_of_basis",
    "adapted_basis",
    "PanelChart",
]


def _check_side(side):
    if side not in ("+", "-"):
        raise DomainError(f"side must be '+' or '-', got {side!r}")


def _mirror(mat: LMat) -> LMat:
    return mat.subs_zinv()


def _to_plus(side, mat):
    return mat if side == "+" else _mirror(mat)


@dataclass(frozen=True)
class Lattice:
    """A free module spanned by the columns of ``gens`` over Q(i)[z]
    (side '+') or Q(i)[1/z] (side '-')."""

    side: str
    gens: LMat

    def __post_init__(self):
        _check_side(self.side)
        if self.gens.nrows != self.gens.ncols:
            raise DomainError("generator matrix must be square")
        if not self.gens.det().is_unit_monomial():
            raise NotInvertibleError(
                "degenerate lattice: generator determinant is not a unit c*z^k"
            )

    @property
    def n(self):
        return self.gens.nrows


@dataclass(frozen=True)
class LatticeClass:
    """Projective class [L] = {z^k L}; ``mat`` is the canonical class
    representative, so equality is syntactic."""

    side: str
    mat: LMat

    @property
    def n(self):
        return self.mat.nrows

    @property
    def type(self) -> int:
        return type_of(self)

    def det_val(self):
        d = _to_plus(self.side, self.mat).det()
        return int(d.val0())

    def scaled(self, k: int) -> LMat:
        """Representative z^k * mat (in the side's own variable)."""
        return self.mat.scale(zpow(k) if self.side == "+" else zpow(-k))


def standard_vertex_mat(n: int, i: int, side="+") -> LMat:
    """Generators of the i-th standard vertex lattice: diag(z,..,z,1,..,1)
    with i copies of z (of 1/z on the minus side)."""
    v = Z if side == "+" else zpow(-1)
    return LMat.diag([v] * i + [LaurentPoly({0: QI_ONE})] * (n - i))


# ---------------------------------------------------------------------------
# Column Hermite normal form over Q(i)[z]
# ---------------------------------------------------------------------------


def _hnf_poly_cols(cols, n):
    """Column HNF of a rank-n module spanned by polynomial columns.

    ``cols``: list of m >= n columns (tuples of LaurentPoly with
    nonnegative exponents).  Returns the n*n upper-triangular matrix with
    monic diagonal and off-diagonal degrees reduced below the diagonal.
    """
    cols = [list(c) for c in cols]
    m = len(cols)
    if m < n:
        raise DomainError("not enough columns to span a rank-n module")
    acnt = m
    for r in range(n - 1, -1, -1):
        while True:
            live = [c for c in range(acnt) if cols[c][r]]
            if not live:
                raise NotInvertibleError("columns do not span a rank-n module")
            if len(live) == 1:
                piv = live[0]
                break
            # reduce all row-r entries by the minimal-degree one
            cmin = min(live, key=lambda c: max(cols[c][r].coeffs))
            for c in live:
                if c == cmin:
                    continue
                q, _ = poly_divmod(cols[c][r], cols[cmin][r])
                if q:
                    cols[c] = [a - q * b for a, b in zip(cols[c], cols[cmin])]
            live = [c for c in range(acnt) if cols[c][r]]
            if len(live) == 1:
                piv = live[0]
                break
        acnt -= 1
        cols[piv], cols[acnt] = cols[acnt], cols[piv]
    for c in range(acnt):
        if any(cols[c]):
            raise NotInvertibleError("dependent columns exceed module rank")
    out = cols[acnt:]
    # monic diagonals
    for r in range(n):
        d = out[r][r]
        lead = d.coeffs[max(d.coeffs)]
        if lead != QI_ONE:
            inv = lead.inverse()
            out[r] = [a * inv for a in out[r]]
    # reduce off-diagonal degrees: entry (i, j) for j > i mod diagonal (i, i)
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            q, rem = poly_divmod(out[j][i], out[i][i])
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return LMat.from_cols(out)


def _canonical_plus_cols(cols, n) -> LMat:
    """Canonical Laurent form: global z-shift to polynomials, HNF, shift back."""
    shift = 0
    for col in cols:
        for a in col:
            if a:
                shift = min(shift, a.val0())
    shift = -int(shift)
    shifted = [[a.shift(shift) for a in col] for col in cols]
    h = _hnf_poly_cols(shifted, n)
    if shift:
        h = h.scale(zpow(-shift))
    return h


def canonical_lattice(L: Lattice) -> LMat:
    """The unique canonical generator matrix (upper triangular, monic
    diagonal, reduced off-diagonal degrees; through z -> 1/z on '-')."""
    plus = _to_plus(L.side, L.gens)
    h = _canonical_plus_cols(plus.cols(), L.n)
    return h if L.side == "+" else _mirror(h)


def canonical_class(L: Lattice) -> LatticeClass:
    """Scale the canonical form by the z-power putting the least entry
    valuation at 0 (entries polynomial, some nonzero constant term)."""
    plus = _to_plus(L.side, L.gens)
    h = _canonical_plus_cols(plus.cols(), L.n)
    v = min(a.val0() for row in h.rows for a in row if a)
    if v:
        h = h.scale(zpow(-int(v)))
    return LatticeClass(L.side, h if L.side == "+" else _mirror(h))


def lattice_class_of_cols(side, cols) -> LatticeClass:
    """Canonical class of the module spanned by the given columns (any
    number >= n of them)."""
    _check_side(side)
    n = len(cols[0])
    if side == "-":
        cols = [[a.subs_zinv() for a in col] for col in cols]
    h = _canonical_plus_cols(cols, n)
    v = min(a.val0() for row in h.rows for a in row if a)
    if v:
        h = h.scale(zpow(-int(v)))
    return LatticeClass(side, h if side == "+" else _mirror(h))


def type_of(c: LatticeClass) -> int:
    """Type in Z/n: valuation of the determinant (at 0 for '+', at
    infinity for '-') mod n; a projective and SL-invariant."""
    return c.det_val() % c.n


# ---------------------------------------------------------------------------
# Membership and containment
# ---------------------------------------------------------------------------


def _member_plus(h: LMat, v) -> bool:
    """Is the vector v in the module with canonical plus-form h?

    Back substitution against the upper-triangular h; membership holds iff
    every division is exact and every coordinate is polynomial.
    """
    n = h.nrows
    v = list(v)
    coords = [None] * n
    for j in range(n - 1, -1, -1):
        rhs = v[j]
        for jj in range(j + 1, n):
            rhs = rhs - h[j, jj] * coords[jj]
        q = divexact(rhs, h[j, j])
        if q is None:
            return False
        coords[j] = q
    for q in coords:
        if q and q.val0() < 0:
            return False
    return True


def member(side, canonical_mat: LMat, v) -> bool:
    """Is the vector (tuple of LaurentPoly) in the lattice?"""
    _check_side(side)
    if side == "-":
        canonical_mat = _mirror(canonical_mat)
        v = [a.subs_zinv() for a in v]
    return _member_plus(canonical_mat, v)


def module_contains(side, outer_canonical: LMat, inner: LMat) -> bool:
    """Does the outer lattice contain every column of ``inner``?"""
    return all(
        member(side, outer_canonical, inner.col(j)) for j in range(inner.ncols)
    )


def incident(c1: LatticeClass, c2: LatticeClass) -> bool:
    """Class incidence: some shift wedges c2 between z*c1 and c1.

    The shift range is pinned by determinant valuations: containment
    z^k M' <= M needs nk + val(det M') in [val(det M), val(det M) + n].
    """
    if c1.side != c2.side:
        raise DomainError("incidence needs lattices on the same side")
    if c1.n != c2.n:
        raise DomainError("dimension mismatch")
    n = c1.n
    m1 = _to_plus(c1.side, c1.mat)
    m2 = _to_plus(c2.side, c2.mat)
    a = int(m1.det().val0())
    b = int(m2.det().val0())
    lo = math.ceil((a - b) / n)
    hi = math.floor((a - b + n) / n)
    zm1 = m1.scale(Z)
    for k in range(lo, hi + 1):
        mk = m2.scale(zpow(k))
        if _member_all(mk, m1) and _member_all(zm1, mk):
            return True
    return False


def _member_all(inner: LMat, outer: LMat) -> bool:
    h = _canonical_plus_cols(outer.cols(), outer.nrows)
    return all(_member_plus(h, inner.col(j)) for j in range(inner.ncols))


# ---------------------------------------------------------------------------
# Chamber chains and adapted bases
# ---------------------------------------------------------------------------


def vertex_classes_of_basis(side, basis: LMat):
    """The n vertex classes of the chamber spanned by an ordered basis.

    On the plus side, position j of the underlying periodic chain is
    spanned by the first n-j basis columns plus z times the rest; on the
    minus side it is 1/z times the first j columns plus the rest.  (The
    two markings are the ones whose standard chains are stabilized by
    the respective Borel subgroups; see borel_membership.)  Classes come
    back in chain order, position 0 first.
    """
    _check_side(side)
    n = basis.nrows
    if basis.ncols != n:
        raise DomainError("basis must be square")
    if not basis.det().is_unit_monomial():
        raise NotInvertibleError("degenerate basis")
    v = Z if side == "+" else zpow(-1)
    out = []
    for j in range(n):
        if side == "+":
            marked = lambda c: c >= n - j
        else:
            marked = lambda c: c < j
        cols = [
            tuple(basis[i, c] * v if marked(c) else basis[i, c] for i in range(n))
            for c in range(n)
        ]
        out.append(lattice_class_of_cols(side, cols))
    return out


def adapted_basis(side, chain_mats) -> LMat:
    """Basis adapted to a full periodic chain L_0 > L_1 > ... > L_{n-1} > zL_0.

    ``chain_mats`` are generator matrices (in the side's variable) with
    consecutive determinant valuations.  Returns the basis matrix b whose
    chain (in the convention of vertex_classes_of_basis) is the given
    one; extraction picks, for each step, the first canonical generator
    of L_j outside L_{j+1}.
    """
    _check_side(side)
    mats = [_to_plus(side, m) for m in chain_mats]
    n = mats[0].nrows
    cans = [_canonical_plus_cols(m.cols(), n) for m in mats]
    nexts = cans[1:] + [cans[0].scale(Z)]
    cols = [None] * n
    for j in range(n):
        pick = None
        for c in range(n):
            v = cans[j].col(c)
            if not _member_plus(nexts[j], v):
                pick = v
                break
        if pick is None:
            raise DomainError("chain positions are equal; not a chamber chain")
        cols[n - 1 - j] = pick
    if side == "+":
        return LMat.from_cols(cols)
    # minus marking is mirror-reversed: 1/z marks sit on the first columns
    return _mirror(LMat.from_cols(list(reversed(cols))))


# ---------------------------------------------------------------------------
# Panel charts
# ---------------------------------------------------------------------------


class PanelChart:
    """The projective-line chart on the chambers through a panel.

    A panel (n-1 pairwise incident classes of distinct types, one type g
    missing) closes into a sandwich A >= M >= B with dim A/B = 2 over
    Q(i), where M runs over the candidate gap lattices.  The chart sends
    t in Q(i) to the class of B + Q(i)[z](u1 + t*u2) and the infinity
    sentinel to B + Q(i)[z]u2, with (u1, u2) the first two canonical
    generators of A independent modulo B.
    """

    def __init__(self, classes):
        classes = list(classes)
        if not classes:
            raise DomainError("empty panel")
        side = classes[0].side
        n = classes[0].n
        if len(classes) != n - 1:
            raise DomainError(f"a panel needs {n - 1} vertices, got {len(classes)}")
        if any(c.side != side or c.n != n for c in classes):
            raise DomainError("panel vertices must share side and dimension")
        types = {c.type: c for c in classes}
        if len(types) != n - 1:
            raise DomainError("panel vertex types must be pairwise distinct")
        (gap,) = set(range(n)) - set(types)
        self.side = side
        self.n = n
        self.gap_type = gap
        self.classes = classes
        # periodic chain of the present types, descending from the gap
        chain = []
        base_val = None
        for idx in range(1, n):
            c = types[(gap + idx) % n]
            a = c.det_val()
            if base_val is None:
                base_val = a
                target = a
            else:
                target = base_val + idx - 1
            k = (target - a) // n
            chain.append(_to_plus(side, c.mat).scale(zpow(k)))
        self._chain = chain
        cans = [_canonical_plus_cols(m.cols(), n) for m in chain]
        for i in range(len(chain) - 1):
            if not all(
                _member_plus(cans[i], chain[i + 1].col(j)) for j in range(n)
            ):
                raise DomainError("panel vertices are not pairwise incident")
        self._A = chain[-1].scale(zpow(-1))
        self._B = chain[0]
        self._Acan = _canonical_plus_cols(self._A.cols(), n)
        if not all(_member_plus(self._Acan, self._B.col(j)) for j in range(n)):
            raise DomainError("panel chain does not close up periodically")
        a_inv = self._Acan.inv()
        q = a_inv @ self._B
        self._Q0 = [
            [q[i, j].ev0() for j in range(n)] for i in range(n)
        ]  # columns span B/zA after transposing below
        q0_cols = [[self._Q0[i][j] for i in range(n)] for j in range(n)]
        # greedy completion of colspan Q0 by standard basis vectors
        picked = []
        base = list(q0_cols)
        _, piv = rref([list(r) for r in zip(*base)]) if base else ([], [])
        rank0 = len(piv)
        for j in range(n):
            e = [QI_ONE if i == j else QI_ZERO for i in range(n)]
            trial = base + [e]
            _, piv = rref([list(r) for r in zip(*trial)])
            if len(piv) > rank0:
                picked.append(j)
                base = trial
                rank0 = len(piv)
            if len(picked) == 2:
                break
        if len(picked) != 2:
            raise DomainError("panel sandwich is not two-dimensional")
        self._j1, self._j2 = picked
        self._u1 = self._Acan.col(self._j1)
        self._u2 = self._Acan.col(self._j2)

    def gap_class(self, t) -> LatticeClass:
        """The chart: the gap-type class at parameter t (Q(i) or inf)."""
        if t == INF:
            v = self._u2
        else:
            if isinstance(t, int):
                t = GaussRat(t)
            v = tuple(a + t * b for a, b in zip(self._u1, self._u2))
        cls = lattice_class_of_cols("+", self._B.cols() + [v])
        if self.side == "-":
            return LatticeClass("-", _mirror(cls.mat))
        return cls

    def chamber_basis(self, t) -> LMat:
        """Ordered basis of the full chamber obtained by filling the gap
        at parameter t; feeds chamber construction."""
        if t == INF:
            v = self._u2
        else:
            if isinstance(t, int):
                t = GaussRat(t)
            v = tuple(a + t * b for a, b in zip(self._u1, self._u2))
        gap_mat = _hnf_plus_cols_laurent(self._B.cols() + [v], self.n)
        chain = [gap_mat] + self._chain
        basis = adapted_basis("+", chain)
        if self.side == "-":
            basis = _mirror(LMat.from_cols(list(reversed(list(basis.cols())))))
        return basis

    def parameter_of(self, gap: LatticeClass):
        """Inverse chart: the parameter of a gap-type class through the
        panel (inf sentinel allowed)."""
        if gap.side != self.side or gap.n != self.n:
            raise DomainError("side or dimension mismatch")
        if gap.type != self.gap_type:
            raise DomainError("class does not have the panel's missing type")
        a_target = int(self._A.det().val0()) + 1
        k = (a_target - gap.det_val()) // self.n
        mat = _to_plus(self.side, gap.mat).scale(zpow(k))
        mat_can = _canonical_plus_cols(mat.cols(), self.n)
        if not all(
            _member_plus(mat_can, self._B.col(j)) for j in range(self.n)
        ):
            raise DomainError("class is not between the panel's neighbours")
        n = self.n
        sys_rows = [
            self._Q0[i]
            + [QI_ONE if i == self._j1 else QI_ZERO]
            + [QI_ONE if i == self._j2 else QI_ZERO]
            for i in range(n)
        ]
        for c in range(n):
            v = mat.col(c)
            coords = self._coords_in_A(v)
            if coords is None:
                raise DomainError("class is not between the panel's neighbours")
            psi = [x.ev0() for x in coords]
            sol = solve_right(sys_rows, psi)
            if sol is None:
                raise DomainError("class is not between the panel's neighbours")
            c1, c2 = sol[-2], sol[-1]
            if not c1 and not c2:
                continue
            return INF if not c1 else c2 / c1
        raise DomainError("class equals the panel floor; not a chamber vertex")

    def _coords_in_A(self, v):
        n = self.n
        h = self._Acan
        v = list(v)
        coords = [None] * n
        for j in range(n - 1, -1, -1):
            rhs = v[j]
            for jj in range(j + 1, n):
                rhs = rhs - h[j, jj] * coords[jj]
            q = divexact(rhs, h[j, j])
            if q is None or (q and q.val0() < 0):
                return None
            coords[j] = q
        return coords


def _hnf_plus_cols_laurent(cols, n) -> LMat:
    """Canonical Laurent form of a module given by (possibly extra) columns."""
    return _canonical_plus_cols(cols, n)
