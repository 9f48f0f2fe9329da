"""Chambers of the positive/negative buildings for SL_n over Laurent
polynomials: Weyl distance and codistance, gates (projections), twin
projections across the two halves, and Schubert-cell coordinates.

Conventions
-----------
A plus chamber is a coset g*B+ where B+ consists of matrices with
polynomial entries, determinant 1, and upper-triangular value at z = 0.
The minus Borel B- is the opposite one: entries polynomial in 1/z,
determinant 1, and LOWER-triangular value at z = infinity; with this
pair the two standard chambers built from one basis are opposite, and
exactly one chamber of every panel maximizes the codistance.

Representatives are normalised on construction: the determinant
valuation is rotated to a multiple of n (right multiplication by the
chain-shift matrix of the side) and then scaled to exactly 0.  With that
normalisation chain position p of a representative carries the vertex of
type p, relative positions read off the reduction engine are genuine
affine Weyl elements (shift vectors summing to zero), and two
representatives give equal chambers exactly when they differ by the
side's Borel (up to constant diagonals).  Chambers compare equal by
their unordered set of vertex classes, so the rotation is invisible to
callers.

Monomial Weyl representatives are shared by the two sides: the matrix
of (pi, k) has z^{k_i} in row i = pi(j)-1 of column j, and the twin
apartment of a basis x consists of the chambers x*n_w*B(side) on both
sides, with codelta(x n_v B-, x n_w B+) = v^{-1} w.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import (
    AffineWeylElt,
    affine_to_word,
    coset_min_split,
    min_double_coset_rep,
    word_to_affine,
)
from .errors import (
    DomainError,
    NotInvertibleError,
    SymbolicDegreeError,
)
from .exactalg import (
    LMat,
    LP_ONE,
    LP_ZERO,
    LaurentPoly,
    RF_T,
    RatFunc,
    Z,
    qi_roots,
    zpow,
)
from .lattice import (
    INF,
    PanelChart,
    _canonical_plus_cols,
    _member_plus,
    vertex_classes_of_basis,
)

__all__ = [
    "Chamber",
    "Simplex",
    "TwinPosition",
    "chamber_from_basis",
    "standard_chamber",
    "apartment_chambers",
    "borel_membership",
    "weyl_matrix",
    "delta",
    "codelta",
    "delta_word",
    "codelta_word",
    "opposite",
    "simplex_delta",
    "simplex_codelta",
    "project",
    "project_twin",
    "common_basis",
    "panel_chamber",
    "panel_parameter",
    "encode_coords",
    "decode_coords",
]


def _check_side(side):
    if side not in ("+", "-"):
        raise DomainError(f"side must be '+' or '-', got {side!r}")


# chain-shift matrices: right multiplication rotates the vertex chain of a
# representative by one position (and multiplies the determinant by z^{+-1}
# in the side's own variable)
_RHO = {}


def _rho(n, side):
    m = _RHO.get((n, side))
    if m is None:
        rows = [[LP_ZERO] * n for _ in range(n)]
        if side == "+":
            for i in range(1, n):
                rows[i - 1][i] = LP_ONE
            rows[n - 1][0] = Z
        else:
            for i in range(1, n):
                rows[i][i - 1] = LP_ONE
            rows[0][n - 1] = zpow(-1)
        m = LMat(rows)
        _RHO[(n, side)] = m
    return m


def _det_val(side, mat):
    d = mat.det() if side == "+" else mat.det().subs_zinv()
    return int(d.val0())


def _align(side, mat):
    """Rotate and scale a representative until its determinant valuation
    (in the side's own variable) is exactly 0."""
    n = mat.nrows
    v = _det_val(side, mat)
    r = v % n
    if r:
        rho = _rho(n, side)
        for _ in range(n - r):
            mat = mat @ rho
        v += n - r
    if v:
        k = -v // n
        mat = mat.scale(zpow(k) if side == "+" else zpow(-k))
    return mat


def _node_of_position(p, n, side):
    """Chain position of a dropped vertex -> Coxeter generator label.

    The sides mark their chains from opposite ends, so the maps are
    mirror images: on '+' position p carries node n - p, on '-' node p
    (position 0 carries the affine node n on both)."""
    if p == 0:
        return n
    return n - p if side == "+" else p


def _position_of_node(s, n, side):
    if s == n:
        return 0
    return n - s if side == "+" else s


class Chamber:
    """A chamber of one half of the twin building, held by a normalised
    ordered basis of its lattice chain."""

    __slots__ = ("side", "rep", "n", "_chain", "_classes")

    def __init__(self, side, rep: LMat):
        _check_side(side)
        if rep.nrows != rep.ncols:
            raise DomainError("chamber representative must be square")
        if not rep.det().is_unit_monomial():
            raise NotInvertibleError("chamber representative is degenerate")
        self.side = side
        self.rep = _align(side, rep)
        self.n = rep.nrows
        self._chain = None
        self._classes = None

    @property
    def chain_classes(self):
        """Vertex classes in chain order; position p carries type p."""
        if self._chain is None:
            self._chain = tuple(vertex_classes_of_basis(self.side, self.rep))
        return self._chain

    @property
    def classes(self):
        if self._classes is None:
            self._classes = frozenset(self.chain_classes)
        return self._classes

    def vertex(self, t: int):
        """The vertex class of type t."""
        return self.chain_classes[t]

    def face(self, kept_types) -> "Simplex":
        return Simplex(self, kept_types)

    def panel(self, drop_type: int) -> "Simplex":
        return Simplex(self, set(range(self.n)) - {drop_type})

    def __eq__(self, other):
        if not isinstance(other, Chamber):
            return NotImplemented
        return self.side == other.side and self.classes == other.classes

    def __hash__(self):
        return hash((self.side, self.classes))

    def __repr__(self):
        return f"<Chamber {self.side} n={self.n}>"


def chamber_from_basis(side, basis: LMat) -> Chamber:
    """The chamber whose lattice chain is spanned by the ordered basis."""
    return Chamber(side, basis)


def standard_chamber(side, n: int) -> Chamber:
    return Chamber(side, LMat.identity(n))


class Simplex:
    """A face of a chamber: the vertex classes at the kept types."""

    __slots__ = ("carrier", "kept_types")

    def __init__(self, carrier: Chamber, kept_types):
        kept = frozenset(kept_types)
        if not kept:
            raise DomainError("empty face")
        if not kept <= set(range(carrier.n)):
            raise DomainError("kept types must be vertex types 0..n-1")
        self.carrier = carrier
        self.kept_types = kept

    @property
    def side(self):
        return self.carrier.side

    @property
    def n(self):
        return self.carrier.n

    @property
    def classes(self):
        return frozenset(self.carrier.chain_classes[t] for t in self.kept_types)

    def cotype_nodes(self):
        """Labels of the generators moving this face's residue."""
        n = self.n
        return tuple(
            sorted(
                _node_of_position(p, n, self.side)
                for p in range(n)
                if p not in self.kept_types
            )
        )

    def __eq__(self, other):
        if not isinstance(other, Simplex):
            return NotImplemented
        return self.side == other.side and self.classes == other.classes

    def __hash__(self):
        return hash((self.side, self.classes))

    def __repr__(self):
        return f"<Simplex {self.side} types={sorted(self.kept_types)}>"


# ---------------------------------------------------------------------------
# Borel membership and monomial Weyl representatives
# ---------------------------------------------------------------------------


def borel_membership(side, mat: LMat) -> bool:
    """Is the matrix in B+ / B-?

    B+: polynomial entries, strictly-lower entries divisible by z (so the
    value at z = 0 is upper triangular).  B-: entries polynomial in 1/z,
    strictly-upper entries divisible by 1/z (value at z = infinity lower
    triangular).  Determinant 1 is a precondition on both sides.
    """
    _check_side(side)
    if mat.nrows != mat.ncols:
        raise DomainError("borel membership needs a square matrix")
    if mat.det() != LP_ONE:
        raise DomainError("borel membership is defined for determinant 1")
    if side == "-":
        mat = mat.subs_zinv()
    n = mat.nrows
    for i in range(n):
        for j in range(n):
            e = mat[i, j]
            lo = i > j if side == "+" else i < j
            if e and e.val0() < (1 if lo else 0):
                return False
    return True


def weyl_matrix(elt: AffineWeylElt) -> LMat:
    """The monomial representative: z^{k_i} in row i = perm(j)-1 of
    column j.  Both halves of the twin building use the same matrices."""
    n = elt.n
    rows = [[LP_ZERO] * n for _ in range(n)]
    for j in range(n):
        i = elt.perm[j] - 1
        rows[i][j] = zpow(elt.shifts[i])
    return LMat(rows)


def apartment_chambers(basis: LMat, word_or_elt, side="+") -> Chamber:
    """The chamber at Weyl position w in the apartment of the basis."""
    _check_side(side)
    if isinstance(word_or_elt, AffineWeylElt):
        elt = word_or_elt
    else:
        elt = word_to_affine(tuple(word_or_elt), basis.nrows)
    return Chamber(side, basis @ weyl_matrix(elt))


# ---------------------------------------------------------------------------
# The reduction engine
# ---------------------------------------------------------------------------
#
# Bruhat/Birkhoff normal forms share one elimination.  Columns of
# a = g^{-1} h are reduced by right column operations col_j' += c z^d col_j
# legal for the Borel of h's side:
#
#   right '+':  d >= 0, and d >= 1 when j > j'   (value at 0 upper)
#   right '-':  d <= 0, and d <= -1 when j < j'  (value at infinity lower)
#
# Each column has a "leading" support point (exponent, row), minimal for
# the key of g's side:
#
#   left '+':  (e, -i)   lowest exponent, bottom-most row
#   left '-':  (-e, i)   highest exponent, top-most row
#
# so that dividing the finished columns by their leading monomials leaves
# a matrix in the left Borel (up to constant diagonals).  While two
# columns lead in the same row, the admissible one reduces the other: for
# right '+' the smaller exponent wins with ties to the left, for right
# '-' the larger exponent wins with ties to the right; either way the
# reduced column's leading point strictly increases in key order and the
# exponents stay inside a window fixed by the determinant, so the loop
# terminates with all leading rows distinct.  Reading off the leading
# monomials gives the relative position.


def _lead(col, key_plus):
    best = None
    for i, p in enumerate(col):
        for e, c in p.coeffs.items():
            k = (e, -i) if key_plus else (-e, i)
            if best is None or k < best[0]:
                best = (k, e, i, c)
    if best is None:
        raise NotInvertibleError("zero column during reduction")
    return best[1], best[2], best[3]


def _reduce(cols, bcols, key_plus, ops_plus, collect=None):
    """Reduce columns in place until leading rows are distinct; returns
    the final leadings [(exponent, row, coefficient)]."""
    while True:
        leads = [_lead(c, key_plus) for c in cols]
        if collect is not None:
            for _, _, c in leads:
                collect(c)
        byrow = {}
        for j, (e, i, _) in enumerate(leads):
            byrow.setdefault(i, []).append(j)
        clash = None
        for js in byrow.values():
            if len(js) > 1:
                clash = js
                break
        if clash is None:
            return leads
        if ops_plus:
            jr = min(clash, key=lambda j: (leads[j][0], j))
        else:
            jr = min(clash, key=lambda j: (-leads[j][0], -j))
        er, _, cr = leads[jr]
        for j2 in clash:
            if j2 == jr:
                continue
            e2, _, c2 = leads[j2]
            f = LaurentPoly({e2 - er: c2 / cr})
            cols[j2] = [a - f * b for a, b in zip(cols[j2], cols[jr])]
            if bcols is not None:
                bcols[j2] = [a - f * b for a, b in zip(bcols[j2], bcols[jr])]


def _relpos(a: LMat, left_plus, right_plus, want_b=False):
    """Normal form of a relative to (left Borel, right Borel).

    Returns (elt, r, b, leads): the monomial read-off as an affine Weyl
    element, the reduced matrix r = a b, the column-operation matrix b
    (when requested), and the leading monomials of r.
    """
    n = a.nrows
    cols = [list(a.col(j)) for j in range(n)]
    bcols = [list(LMat.identity(n).col(j)) for j in range(n)] if want_b else None
    leads = _reduce(cols, bcols, left_plus, right_plus)
    perm = [0] * n
    shifts = [0] * n
    for j, (e, i, _) in enumerate(leads):
        perm[j] = i + 1
        shifts[i] = e
    elt = AffineWeylElt(tuple(perm), tuple(shifts))
    r = LMat.from_cols(cols)
    b = LMat.from_cols(bcols) if want_b else None
    return elt, r, b, leads


def _monomial_inverse(leads, n):
    """Inverse of the monomial matrix with c_j z^{e_j} in row i_j, col j."""
    rows = [[LP_ZERO] * n for _ in range(n)]
    for j, (e, i, c) in enumerate(leads):
        rows[j][i] = LaurentPoly({-e: c.inverse()})
    return LMat(rows)


# ---------------------------------------------------------------------------
# Weyl distance and codistance
# ---------------------------------------------------------------------------


def delta(c: Chamber, d: Chamber) -> AffineWeylElt:
    """Weyl distance between chambers on the same side."""
    if c.side != d.side:
        raise DomainError("delta needs chambers on the same side; use codelta")
    if c.n != d.n:
        raise DomainError("dimension mismatch")
    plus = c.side == "+"
    a = c.rep.inv() @ d.rep
    elt, _, _, _ = _relpos(a, plus, plus)
    return elt


def codelta(c: Chamber, d: Chamber) -> AffineWeylElt:
    """Codistance between chambers on opposite sides (either order;
    codelta(c, d) == codelta(d, c)^{-1})."""
    if c.side == d.side:
        raise DomainError("codelta needs chambers on opposite sides; use delta")
    if c.n != d.n:
        raise DomainError("dimension mismatch")
    a = c.rep.inv() @ d.rep
    elt, _, _, _ = _relpos(a, c.side == "+", d.side == "+")
    return elt


def delta_word(c: Chamber, d: Chamber):
    """Weyl distance as a normal-form word."""
    return affine_to_word(delta(c, d))


def codelta_word(c: Chamber, d: Chamber):
    """Codistance as a normal-form word."""
    return affine_to_word(codelta(c, d))


def opposite(cminus: Chamber, cplus: Chamber) -> bool:
    """Are the chambers opposite (codistance 1)?"""
    return codelta(cminus, cplus) == AffineWeylElt.identity(cminus.n)


@dataclass(frozen=True)
class TwinPosition:
    """Relative position of two simplices: the minimal double-coset
    representative word framed by the two residues' generator sets."""

    left: tuple
    word: tuple
    right: tuple


def _double_coset_position(elt, x: Simplex, y: Simplex) -> TwinPosition:
    j, k = x.cotype_nodes(), y.cotype_nodes()
    rep = min_double_coset_rep(elt.to_window(), set(j), set(k))
    return TwinPosition(j, affine_to_word(AffineWeylElt.from_window(rep)), k)


def simplex_delta(x: Simplex, y: Simplex) -> TwinPosition:
    """W_J w W_K position of two same-side simplices."""
    if x.side != y.side:
        raise DomainError("simplex_delta needs simplices on the same side")
    return _double_coset_position(delta(x.carrier, y.carrier), x, y)


def simplex_codelta(x: Simplex, y: Simplex) -> TwinPosition:
    """W_J w W_K coposition of two opposite-side simplices."""
    if x.side == y.side:
        raise DomainError("simplex_codelta needs simplices on opposite sides")
    return _double_coset_position(codelta(x.carrier, y.carrier), x, y)


# ---------------------------------------------------------------------------
# Projections (gates)
# ---------------------------------------------------------------------------


def project(x: Simplex, c: Chamber) -> Chamber:
    """The gate: the chamber of the residue of x nearest to c.

    Constructively: factor a = g_c^{-1} g_x as b_L m b^{-1} through the
    reduction engine, split delta(c, x) = w_min u with u in the residue
    group W_J, and return g_c b_L n_{w_min}.
    """
    if x.side != c.side:
        raise DomainError("project needs a face and a chamber on the same side")
    d0 = x.carrier
    if d0.n != c.n:
        raise DomainError("dimension mismatch")
    plus = c.side == "+"
    a = c.rep.inv() @ d0.rep
    elt, r, _, leads = _relpos(a, plus, plus)
    bl = r @ _monomial_inverse(leads, r.nrows)
    wmin, _ = coset_min_split(elt.to_window(), set(x.cotype_nodes()))
    rep = c.rep @ bl @ weyl_matrix(AffineWeylElt.from_window(wmin))
    return Chamber(c.side, rep)


# ---------------------------------------------------------------------------
# Twin projections
# ---------------------------------------------------------------------------


def _symbolic_panel_basis(chart: PanelChart):
    """Chamber basis through a panel with the free slot linear in an
    indeterminate t (entering through rational-function coefficients).

    The slots mimic the chart's own chamber_basis: the varying lattice
    M(t) = B + <u1 + t u2> contributes u1 + t u2, the fixed chain steps
    contribute their canonical generators, and the last step contributes
    z u2, which lies outside z M(t) for every finite t.
    """
    n = chart.n

    def lift(p):
        return p.map_coeffs(RatFunc)

    cols = [None] * n
    cols[0] = [lift(Z * a) for a in chart._u2]
    cols[n - 1] = [lift(a) + RF_T * lift(b) for a, b in zip(chart._u1, chart._u2)]
    chain = chart._chain
    for j in range(1, n - 1):
        can = _canonical_plus_cols(chain[j - 1].cols(), n)
        nxt = _canonical_plus_cols(chain[j].cols(), n)
        pick = None
        for cidx in range(n):
            v = can.col(cidx)
            if not _member_plus(nxt, v):
                pick = v
                break
        if pick is None:
            raise DomainError("panel chain degenerate")
        cols[n - 1 - j] = [lift(a) for a in pick]
    if chart.side == "-":
        return LMat.from_cols(list(reversed(cols))).subs_zinv()
    return LMat.from_cols(cols)


def _panel_candidates(chart: PanelChart, c: Chamber):
    """Panel parameters where the generic codistance to c can drop.

    One engine run over Q(i)(t) on g_c^{-1} h(t) collects every leading
    coefficient; the Q(i) roots of their numerators and denominators are
    the only points where the specialised elimination can differ from the
    generic one, so the projection parameter is among them (or infinity).
    """
    h = _symbolic_panel_basis(chart)
    inv = c.rep.inv().map_entries(lambda p: p.map_coeffs(RatFunc))
    a = inv @ h
    seen = set()
    cols = [list(a.col(j)) for j in range(a.ncols)]
    _reduce(cols, None, c.side == "+", c.side != "+", collect=seen.add)
    roots = set()
    for rf in seen:
        for part in (rf.num, rf.den):
            if part.degree() >= 1:
                roots.update(qi_roots(part))
    ordered = sorted(roots, key=lambda g: (g.re, g.im))
    ordered.append(INF)
    return ordered


def project_twin(x: Simplex, c: Chamber) -> Chamber:
    """The twin gate: the chamber of the residue of x with the longest
    codistance to the opposite-side chamber c.

    Greedy panel ascent: while some residue generator lengthens the
    codistance, the unique longer chamber of that panel is located by the
    symbolic elimination over a panel parameter.
    """
    if x.side == c.side:
        raise DomainError("project_twin needs a face and a chamber on opposite sides")
    d = x.carrier
    if d.n != c.n:
        raise DomainError("dimension mismatch")
    n = d.n
    jset = x.cotype_nodes()
    v = codelta(d, c)
    while True:
        step = None
        for s in jset:
            sv = word_to_affine((s,), n).compose(v)
            if sv.length() > v.length():
                step = (s, sv)
                break
        if step is None:
            return d
        s, sv = step
        p = _position_of_node(s, n, d.side)
        chart = PanelChart([d.chain_classes[t] for t in range(n) if t != p])
        found = None
        for t in _panel_candidates(chart, c):
            cand = Chamber(d.side, chart.chamber_basis(t))
            if codelta(cand, c) == sv:
                found = cand
                break
        if found is None:
            raise SymbolicDegreeError(
                "no panel chamber attains the longer codistance among the "
                "collected specialisation parameters"
            )
        d = found
        v = sv


# ---------------------------------------------------------------------------
# Opposite pairs and Schubert-cell coordinates
# ---------------------------------------------------------------------------


def common_basis(cm: Chamber, cp: Chamber) -> LMat:
    """A basis x with chamber_from_basis('-', x) = cm and
    chamber_from_basis('+', x) = cp; exists exactly for opposite pairs."""
    if cm.side != "-" or cp.side != "+":
        raise DomainError("common_basis takes a minus chamber then a plus chamber")
    if cm.n != cp.n:
        raise DomainError("dimension mismatch")
    a = cm.rep.inv() @ cp.rep
    elt, _, b, _ = _relpos(a, False, True, want_b=True)
    if elt != AffineWeylElt.identity(cm.n):
        raise DomainError("chambers are not opposite")
    return cp.rep @ b


def panel_chamber(panel: Simplex, t) -> Chamber:
    """The chamber through a panel at chart parameter t (or INF)."""
    if len(panel.kept_types) != panel.n - 1:
        raise DomainError("panel_chamber needs a panel (exactly one type missing)")
    chart = PanelChart(
        [panel.carrier.chain_classes[p] for p in sorted(panel.kept_types)]
    )
    return Chamber(panel.side, chart.chamber_basis(t))


def panel_parameter(panel: Simplex, c: Chamber):
    """Inverse chart: the parameter at which a chamber through the panel
    sits (INF for the chamber at infinity)."""
    if len(panel.kept_types) != panel.n - 1:
        raise DomainError("panel_parameter needs a panel (exactly one type missing)")
    if c.side != panel.side:
        raise DomainError("side mismatch")
    if not panel.classes <= c.classes:
        raise DomainError("chamber does not contain the panel")
    (gap,) = set(range(panel.n)) - panel.kept_types
    chart = PanelChart(
        [panel.carrier.chain_classes[p] for p in sorted(panel.kept_types)]
    )
    return chart.parameter_of(c.chain_classes[gap])


def _validated_word(welt, word, n):
    if word is None:
        return affine_to_word(welt)
    word = tuple(word)
    if word_to_affine(word, n) != welt:
        raise DomainError("word does not spell the Weyl distance")
    if welt.length() != len(word):
        raise DomainError("word is not reduced")
    return word


def encode_coords(cp: Chamber, dm: Chamber, e: Chamber, word=None):
    """Schubert-cell coordinates of e over the opposite pair (cp, dm).

    Walks the minimal gallery of the given reduced type (default: the
    normal form of delta(cp, e)) from cp to e; the k-th coordinate is the
    panel parameter of the twin projection of the k-th gallery chamber
    onto the matching panel of the reference apartment gallery on the
    other side.  decode_coords inverts the walk exactly.
    """
    if cp.side != "+" or dm.side != "-" or e.side != "+":
        raise DomainError("encode_coords takes (plus, minus, plus) chambers")
    n = cp.n
    x = common_basis(dm, cp)
    word = _validated_word(delta(cp, e), word, n)
    coords = []
    cprev = cp
    dprev = dm
    prefix = AffineWeylElt.identity(n)
    for s in word:
        pp = _position_of_node(s, n, "+")
        pm = _position_of_node(s, n, "-")
        cnext = project(cprev.panel(pp), e)
        xk = project_twin(dprev.panel(pm), cnext)
        coords.append(panel_parameter(dprev.panel(pm), xk))
        prefix = prefix.compose(word_to_affine((s,), n))
        dprev = apartment_chambers(x, prefix, "-")
        cprev = cnext
    return coords


def decode_coords(cp: Chamber, dm: Chamber, word, coords) -> Chamber:
    """Rebuild the plus chamber from its Schubert-cell coordinates."""
    if cp.side != "+" or dm.side != "-":
        raise DomainError("decode_coords takes (plus, minus) chambers")
    n = cp.n
    x = common_basis(dm, cp)
    word = tuple(word)
    welt = word_to_affine(word, n)
    if welt.length() != len(word):
        raise DomainError("word is not reduced")
    if len(word) != len(coords):
        raise DomainError("word and coordinate list differ in length")
    cprev = cp
    dprev = dm
    prefix = AffineWeylElt.identity(n)
    for s, t in zip(word, coords):
        pp = _position_of_node(s, n, "+")
        pm = _position_of_node(s, n, "-")
        xk = panel_chamber(dprev.panel(pm), t)
        cprev = project_twin(cprev.panel(pp), xk)
        prefix = prefix.compose(word_to_affine((s,), n))
        dprev = apartment_chambers(x, prefix, "-")
    return cprev
