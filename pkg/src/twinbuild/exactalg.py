"""Exact scalar and matrix arithmetic for the building computations.

Everything here is exact: Gaussian rationals (elements of Q(i)), sparse
Laurent polynomials over them, univariate polynomials and rational
functions in an auxiliary parameter t, and square matrices of Laurent
polynomials with the operators used throughout the package:

* ``valuation`` at zero and at infinity,
* the Euler operator ``z d/dz``,
* ``star`` (conjugate transpose, constant matrices),
* ``sharp`` (conjugate transpose composed with z -> 1/z),
* ``iota`` (coefficientwise conjugation),
* exact determinants and inverses of matrices whose determinant is a
  unit c*z^k.

There is no floating point anywhere and no rounding ever.

>>> f = parse_poly("z^-1 + 2*z^2")
>>> str(f.z_ddz())
'-z^-1 + 4*z^2'
>>> f.val0(), f.val_inf()
(-1, -2)
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DomainError, NotInvertibleError

__all__ = [
    "GaussRat",
    "QI_ZERO",
    "QI_ONE",
    "QI_I",
    "LaurentPoly",
    "LP_ZERO",
    "LP_ONE",
    "Z",
    "zpow",
    "const",
    "parse_scalar",
    "scalar_to_str",
    "parse_poly",
    "poly_to_str",
    "poly_divmod",
    "poly_gcd",
    "divexact",
    "LMat",
    "mat_to_json",
    "mat_from_json",
    "rref",
    "kernel_basis",
    "solve_right",
    "const_inverse",
    "charpoly",
    "UPoly",
    "RatFunc",
    "RF_ZERO",
    "RF_ONE",
    "RF_T",
]

INF = math.inf


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


class GaussRat:
    """An element a + b*i of Q(i), with a, b exact rationals.

    >>> x = GaussRat(1, 2)
    >>> str(x * x.conj)
    '5'
    >>> str(GaussRat(0, 1) ** 2)
    '-1'
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):  # pragma: no cover - immutability
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QI_ONE
        for _ in range(k):
            out = out * self
        return out

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def conj(self):
        return GaussRat(self.re, -self.im)

    def is_real(self):
        return not self.im

    def __str__(self):
        return scalar_to_str(self)

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"


QI_ZERO = GaussRat(0)
QI_ONE = GaussRat(1)
QI_I = GaussRat(0, 1)


def scalar_to_str(c: GaussRat) -> str:
    """Canonical text form: bare rational if real, else ``(a+bi)``.

    >>> scalar_to_str(GaussRat(Fraction(-3, 2)))
    '-3/2'
    >>> scalar_to_str(GaussRat(0, 1))
    '(0+1i)'
    >>> scalar_to_str(GaussRat(Fraction(1, 2), Fraction(-3, 4)))
    '(1/2-3/4i)'
    """
    if c.is_real():
        return str(c.re)
    sign = "-" if c.im < 0 else "+"
    return f"({c.re}{sign}{abs(c.im)}i)"


_RAT = r"[0-9]+(?:/[0-9]+)?"


def parse_scalar(s: str) -> GaussRat:
    """Parse the scalar grammar (whitespace-insensitive).

    >>> parse_scalar("  -3/2 ") == GaussRat(Fraction(-3, 2))
    True
    >>> parse_scalar("(1/2 - 3/4 i)") == GaussRat(Fraction(1, 2), Fraction(-3, 4))
    True
    >>> parse_scalar("(2i)") == GaussRat(0, 2)
    True
    """
    s = "".join(s.split())
    neg = False
    if s.startswith(("+", "-")):
        neg = s[0] == "-"
        s = s[1:]
    if s.startswith("(") and s.endswith(")"):
        body = s[1:-1]
        val = _parse_complex_body(body)
    else:
        if not re.fullmatch(_RAT, s):
            raise ValueError(f"bad scalar: {s!r}")
        val = GaussRat(Fraction(s))
    return -val if neg else val


def _parse_complex_body(body: str) -> GaussRat:
    if not body:
        raise ValueError("empty scalar")
    if not body.endswith("i"):
        if re.fullmatch(r"[+-]?" + _RAT, body):
            return GaussRat(Fraction(body))
        raise ValueError(f"bad scalar body: {body!r}")
    body = body[:-1]
    # locate the sign separating real and imaginary parts, if any
    split = -1
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-":
            split = pos
            break
    if split == -1:
        re_part, im_part = "0", body or "1"
    else:
        re_part, im_part = body[:split], body[split:]
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = Fraction(im_part)
    if not re.fullmatch(r"[+-]?" + _RAT, re_part):
        raise ValueError(f"bad real part: {re_part!r}")
    return GaussRat(Fraction(re_part), im)


# ---------------------------------------------------------------------------
# Sparse Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """A finite sum of c*z^e with exponents in Z, stored sparsely.

    Coefficients are duck-typed: any exact field element supporting the
    arithmetic dunders works (GaussRat everywhere, RatFunc during the
    one-parameter panel computations).  Zero coefficients are never stored,
    so the zero polynomial is field-agnostic.

    >>> str(Z + zpow(-1))
    'z^-1 + z'
    >>> (Z * Z).val0()
    2
    >>> LP_ZERO.val0()
    inf
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    d[e] = c
        object.__setattr__(self, "coeffs", d)

    def __setattr__(self, name, value):  # pragma: no cover - immutability
        raise AttributeError("LaurentPoly is immutable")

    @staticmethod
    def term(c, e: int) -> "LaurentPoly":
        return LaurentPoly({e: c})

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            x = GaussRat(x)
        if isinstance(x, (GaussRat, RatFunc)):
            return LaurentPoly({0: x})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = dict(self.coeffs)
        for e, c in o.coeffs.items():
            s = d.get(e)
            if s is None:
                d[e] = c
            else:
                s = s + c
                if s:
                    d[e] = s
                else:
                    del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", d)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", {e: -c for e, c in self.coeffs.items()})
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in o.coeffs.items():
                e = e1 + e2
                p = c1 * c2
                s = d.get(e)
                if s is None:
                    if p:
                        d[e] = p
                else:
                    s = s + p
                    if s:
                        d[e] = s
                    else:
                        del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", d)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def val0(self):
        """Valuation at z = 0: least exponent present; +inf for 0."""
        return min(self.coeffs) if self.coeffs else INF

    def val_inf(self):
        """Valuation at z = infinity: minus the greatest exponent; +inf for 0."""
        return -max(self.coeffs) if self.coeffs else INF

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by z^d."""
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", {e + d: c for e, c in self.coeffs.items()})
        return out

    def subs_zinv(self) -> "LaurentPoly":
        """The substitution z -> 1/z (exponent negation)."""
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", {-e: c for e, c in self.coeffs.items()})
        return out

    def z_ddz(self) -> "LaurentPoly":
        """The Euler operator: sum c_e z^e  ->  sum e*c_e z^e."""
        return LaurentPoly({e: e * c for e, c in self.coeffs.items()})

    def conj_coeffs(self) -> "LaurentPoly":
        """Coefficientwise complex conjugation (z untouched)."""
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", {e: c.conj for e, c in self.coeffs.items()})
        return out

    def sharp(self) -> "LaurentPoly":
        """Conjugate coefficients and substitute z -> 1/z."""
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", {-e: c.conj for e, c in self.coeffs.items()})
        return out

    def is_constant(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def ev0(self, zero=QI_ZERO):
        """Evaluate at z = 0; defined only when val0 >= 0."""
        if self.coeffs and self.val0() < 0:
            raise DomainError("pole at z = 0")
        return self.coeffs.get(0, zero)

    def ev_inf(self, zero=QI_ZERO):
        """Evaluate at z = infinity; defined only when val_inf >= 0."""
        if self.coeffs and self.val_inf() < 0:
            raise DomainError("pole at z = infinity")
        return self.coeffs.get(0, zero)

    def coeff(self, e: int, zero=QI_ZERO):
        return self.coeffs.get(e, zero)

    def is_unit_monomial(self) -> bool:
        """True iff the polynomial is a single term c*z^k with c != 0."""
        return len(self.coeffs) == 1

    def map_coeffs(self, fn) -> "LaurentPoly":
        return LaurentPoly({e: fn(c) for e, c in self.coeffs.items()})

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"<LaurentPoly {poly_to_str(self)}>"


LP_ZERO = LaurentPoly()
LP_ONE = LaurentPoly({0: QI_ONE})
Z = LaurentPoly({1: QI_ONE})


def zpow(e: int, c=QI_ONE) -> LaurentPoly:
    """The monomial c*z^e (c defaults to 1)."""
    return LaurentPoly({e: c})


def const(c) -> LaurentPoly:
    """The constant polynomial with value c (int/Fraction/GaussRat)."""
    if isinstance(c, (int, Fraction)):
        c = GaussRat(c)
    return LaurentPoly({0: c})


def poly_to_str(f: LaurentPoly) -> str:
    """Canonical text form: terms by ascending exponent.

    >>> poly_to_str(zpow(2) - zpow(-1, GaussRat(Fraction(1, 2))))
    '-1/2*z^-1 + z^2'
    >>> poly_to_str(const(GaussRat(0, 1)) * Z + const(3))
    '3 + (0+1i)*z'
    >>> poly_to_str(LP_ZERO)
    '0'
    """
    if not f.coeffs:
        return "0"
    parts = []
    for e in sorted(f.coeffs):
        c = f.coeffs[e]
        cs = scalar_to_str(c)
        if e == 0:
            term = cs
        else:
            zs = "z" if e == 1 else f"z^{e}"
            if cs == "1":
                term = zs
            elif cs == "-1":
                term = "-" + zs
            else:
                term = f"{cs}*{zs}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


_TERM_RE = re.compile(
    r"^(\((?:[^()]*)\)|" + _RAT + r")?" r"(?:\*?(z(?:\^(-?[0-9]+))?))?$"
)


def parse_poly(s: str) -> LaurentPoly:
    """Parse the polynomial grammar (whitespace-insensitive).

    >>> parse_poly("3 + (0+1i) * z") == const(3) + const(QI_I) * Z
    True
    >>> parse_poly(poly_to_str(zpow(-3) - Z)) == zpow(-3) - Z
    True
    >>> parse_poly("0")
    <LaurentPoly 0>
    """
    s = "".join(s.split())
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return LP_ZERO
    # split into signed terms at top-level +/- (not inside parens, not after ^)
    terms = []
    depth = 0
    start = 0
    for pos, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and pos > 0 and s[pos - 1] not in "^*+-(":
            terms.append(s[start:pos])
            start = pos
    terms.append(s[start:])
    total = LP_ZERO
    for t in terms:
        sign = 1
        if t.startswith(("+", "-")):
            if t[0] == "-":
                sign = -1
            t = t[1:]
        m = _TERM_RE.match(t)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad term: {t!r}")
        coef = parse_scalar(m.group(1)) if m.group(1) is not None else QI_ONE
        if m.group(2) is None:
            e = 0
        elif m.group(3) is None:
            e = 1
        else:
            e = int(m.group(3))
        if sign < 0:
            coef = -coef
        total = total + LaurentPoly.term(coef, e)
    return total


# ---------------------------------------------------------------------------
# Division helpers (used by the lattice normal form)
# ---------------------------------------------------------------------------


def poly_divmod(f: LaurentPoly, g: LaurentPoly):
    """Division with remainder in Q(i)[z]; both arguments need val0 >= 0.

    >>> q, r = poly_divmod(Z * Z + const(1), Z + const(1))
    >>> str(q), str(r)
    ('-1 + z', '2')
    """
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if (f and f.val0() < 0) or g.val0() < 0:
        raise DomainError("poly_divmod needs polynomial (nonnegative) exponents")
    q = LP_ZERO
    r = f
    dg = max(g.coeffs)
    lg = g.coeffs[dg]
    while r and max(r.coeffs) >= dg:
        dr = max(r.coeffs)
        t = LaurentPoly.term(r.coeffs[dr] / lg, dr - dg)
        q = q + t
        r = r - t * g
    return q, r


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Monic gcd in Q(i)[z]."""
    a, b = f, g
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        lead = a.coeffs[max(a.coeffs)]
        a = a * const(lead.inverse())
    return a


def divexact(f: LaurentPoly, g: LaurentPoly):
    """Exact Laurent division f/g, or None if g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by zero")
    if not f:
        return LP_ZERO
    a, b = f.shift(-f.val0()), g.shift(-g.val0())
    q, r = poly_divmod(a, b)
    if r:
        return None
    return q.shift(f.val0() - g.val0())


# ---------------------------------------------------------------------------
# Laurent matrices
# ---------------------------------------------------------------------------


class LMat:
    """A rectangular matrix of LaurentPoly entries (usually square).

    >>> g = LMat.diag([Z, zpow(-1)])
    >>> str(g.det())
    '1'
    >>> g.sharp() == LMat.diag([zpow(-1), Z])
    True
    >>> (g @ g.sharp()) == LMat.identity(2)
    True
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(self._entry(x) for x in row) for row in rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged or empty matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", len(rows[0]))

    def __setattr__(self, name, value):  # pragma: no cover - immutability
        raise AttributeError("LMat is immutable")

    @staticmethod
    def _entry(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return const(x)
        if isinstance(x, (GaussRat, RatFunc)):
            return LaurentPoly({0: x}) if x else LP_ZERO
        raise TypeError(f"bad matrix entry: {x!r}")

    @staticmethod
    def identity(n: int, one=QI_ONE) -> "LMat":
        o = LaurentPoly({0: one})
        return LMat(
            [[o if i == j else LP_ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(n: int, m: int | None = None) -> "LMat":
        m = n if m is None else m
        return LMat([[LP_ZERO] * m for _ in range(n)])

    @staticmethod
    def diag(entries) -> "LMat":
        entries = [LMat._entry(x) for x in entries]
        n = len(entries)
        return LMat(
            [[entries[i] if i == j else LP_ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_cols(cols) -> "LMat":
        cols = list(cols)
        return LMat(
            [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]
        )

    def col(self, j: int):
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, LMat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        if not isinstance(other, LMat):
            return NotImplemented
        return LMat(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, LMat):
            return NotImplemented
        return LMat(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self):
        return LMat([[-a for a in row] for row in self.rows])

    def scale(self, c) -> "LMat":
        c = self._entry(c)
        return LMat([[c * a for a in row] for row in self.rows])

    def __matmul__(self, other):
        if not isinstance(other, LMat):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        ocolumns = [other.col(j) for j in range(other.ncols)]
        out = []
        for row in self.rows:
            out_row = []
            for colv in ocolumns:
                acc = LP_ZERO
                for a, b in zip(row, colv):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return LMat(out)

    def transpose(self) -> "LMat":
        return LMat(list(zip(*self.rows)))

    def iota(self) -> "LMat":
        """Coefficientwise complex conjugation, entry positions untouched."""
        return LMat([[a.conj_coeffs() for a in row] for row in self.rows])

    def sharp(self) -> "LMat":
        """Conjugate transpose composed with z -> 1/z."""
        return LMat(
            [
                [self.rows[j][i].sharp() for j in range(self.nrows)]
                for i in range(self.ncols)
            ]
        )

    def star(self) -> "LMat":
        """Conjugate transpose; defined for constant matrices only."""
        if not self.is_constant():
            raise DomainError("star is defined for constant matrices; use sharp")
        return self.sharp()

    def is_constant(self) -> bool:
        return all(a.is_constant() for row in self.rows for a in row)

    def z_ddz(self) -> "LMat":
        return LMat([[a.z_ddz() for a in row] for row in self.rows])

    def subs_zinv(self) -> "LMat":
        return LMat([[a.subs_zinv() for a in row] for row in self.rows])

    def map_entries(self, fn) -> "LMat":
        return LMat([[fn(a) for a in row] for row in self.rows])

    def trace(self) -> LaurentPoly:
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        t = LP_ZERO
        for i in range(self.nrows):
            t = t + self.rows[i][i]
        return t

    def det(self) -> LaurentPoly:
        """Exact determinant by cofactor expansion."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _det_rows(self.rows)

    def is_special(self) -> bool:
        return self.det() == LP_ONE

    def inv(self) -> "LMat":
        """Inverse of a matrix whose determinant is a unit c*z^k."""
        d = self.det()
        if not d.is_unit_monomial():
            raise NotInvertibleError(
                f"determinant {poly_to_str(d)} is not a unit c*z^k"
            )
        (e, c), = d.coeffs.items()
        dinv = LaurentPoly.term(c.inverse(), -e)
        n = self.nrows
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [self.rows[r][cc] for cc in range(n) if cc != j]
                    for r in range(n)
                    if r != i
                ]
                cof = _det_rows(minor) if minor else LP_ONE
                if (i + j) % 2:
                    cof = -cof
                out[j][i] = cof * dinv
        return LMat(out)

    def ev0(self) -> "LMat":
        return LMat([[const(a.ev0()) for a in row] for row in self.rows])

    def ev_inf(self) -> "LMat":
        return LMat([[const(a.ev_inf()) for a in row] for row in self.rows])

    def const_entries(self):
        """Entries as GaussRat values; requires a constant matrix."""
        if not self.is_constant():
            raise DomainError("matrix is not constant")
        return [[a.coeff(0) for a in row] for row in self.rows]

    def __str__(self):
        return "\n".join(
            "[" + ", ".join(poly_to_str(a) for a in row) + "]" for row in self.rows
        )

    def __repr__(self):
        return f"<LMat {self.nrows}x{self.ncols}>"


def _det_rows(rows) -> LaurentPoly:
    n = len(rows)
    if n == 0:
        return LP_ONE
    if n == 1:
        return rows[0][0]
    out = LP_ZERO
    top = rows[0]
    for j in range(n):
        if not top[j]:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = top[j] * _det_rows(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def mat_to_json(m: LMat):
    """Matrix as a JSON value: array of rows of canonical term strings."""
    return [[poly_to_str(a) for a in row] for row in m.rows]


def mat_from_json(data) -> LMat:
    return LMat([[parse_poly(s) for s in row] for row in data])


# ---------------------------------------------------------------------------
# Constant linear algebra over a field (GaussRat unless stated otherwise)
# ---------------------------------------------------------------------------


def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse() if hasattr(rows[r][c], "inverse") else 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def kernel_basis(rows):
    """Basis of the right kernel {v : A v = 0}; vectors as lists."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [QI_ZERO] * ncols
        v[fc] = QI_ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_right(rows, rhs):
    """One solution x of A x = b over the field, or None if inconsistent."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [QI_ZERO] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x

def const_inverse(rows):
    """Inverse of a square matrix over the field, or None if singular."""
    n = len(rows)
    aug = [list(r) + [QI_ONE if i == j else QI_ZERO for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


def qi_roots(poly: "UPoly"):
    """All roots of a UPoly that lie in Q(i), with multiplicity.

    Linear polynomials are solved directly; beyond that, the exact
    factorisation over Q(i) is delegated to sympy (the one place it is
    used in this package).
    """
    cs = poly.coeffs
    if len(cs) <= 1:
        return []
    if len(cs) == 2:
        return [-cs[0] / cs[1]]
    import sympy as sp

    t = sp.Symbol("t")

    def to_sp(g):
        return sp.Rational(g.re.numerator, g.re.denominator) + sp.Rational(
            g.im.numerator, g.im.denominator
        ) * sp.I

    expr = sp.Add(*[to_sp(c) * t**k for k, c in enumerate(cs)])
    out = []
    for fac, mult in sp.factor_list(expr, t, extension=[sp.I])[1]:
        p = sp.Poly(fac, t)
        if p.degree() != 1:
            continue
        a, b = p.all_coeffs()
        r = sp.expand(-b / a)
        re, im = sp.re(r), sp.im(r)
        root = GaussRat(
            Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))
        )
        out.extend([root] * mult)
    return out


def charpoly(rows) -> "UPoly":
    """Characteristic polynomial det(t*1 - A) by the trace recursion."""
    n = len(rows)
    coeffs = [QI_ZERO] * (n + 1)
    coeffs[n] = QI_ONE
    m = [[QI_ONE if i == j else QI_ZERO for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        # m <- A @ m
        m = [
            [
                sum((rows[i][l] * m[l][j] for l in range(n)), QI_ZERO)
                for j in range(n)
            ]
            for i in range(n)
        ]
        tr = sum((m[i][i] for i in range(n)), QI_ZERO)
        c = -(tr / k)
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] = m[i][i] + c
    return UPoly(coeffs)


# ---------------------------------------------------------------------------
# Univariate polynomials / rational functions in an auxiliary parameter t
# ---------------------------------------------------------------------------


class UPoly:
    """Dense univariate polynomial over GaussRat, coefficients ascending.

    >>> p = UPoly([GaussRat(-1), QI_ZERO, QI_ONE])   # t^2 - 1
    >>> p.eval(GaussRat(3)) == GaussRat(8)
    True
    >>> p.degree()
    2
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [c if isinstance(c, GaussRat) else GaussRat(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):  # pragma: no cover - immutability
        raise AttributeError("UPoly is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, UPoly):
            return x
        if isinstance(x, (int, Fraction, GaussRat)):
            return UPoly([x])
        return None

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [QI_ZERO] * (n - len(self.coeffs))
        b = list(o.coeffs) + [QI_ZERO] * (n - len(o.coeffs))
        return UPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self or not o:
            return UPoly([])
        out = [QI_ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UPoly"):
        if not other:
            raise ZeroDivisionError("UPoly division by zero")
        q = UPoly([])
        r = self
        d = other.degree()
        lead = other.coeffs[-1]
        while r and r.degree() >= d:
            k = r.degree() - d
            c = r.coeffs[-1] / lead
            t = UPoly([QI_ZERO] * k + [c])
            q = q + t
            r = r - t * other
        return q, r

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a else a

    def monic(self) -> "UPoly":
        if not self:
            return self
        inv = self.coeffs[-1].inverse()
        return UPoly([c * inv for c in self.coeffs])

    def eval(self, x: GaussRat) -> GaussRat:
        acc = QI_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = scalar_to_str(c)
            if e == 0:
                parts.append(cs)
            else:
                ts = "t" if e == 1 else f"t^{e}"
                parts.append(ts if cs == "1" else f"{cs}*{ts}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<UPoly {self}>"


class RatFunc:
    """A rational function num/den in t over Q(i), kept normalized.

    Normalization: gcd(num, den) = 1 and den monic; this makes equality
    syntactic.  Supports the field operations required of LaurentPoly
    coefficients, so matrices of Laurent polynomials with RatFunc
    coefficients drive the one-parameter panel computations.

    >>> x = RF_T / (RF_T + 1)
    >>> x + 1 == (2 * RF_T + 1) / (RF_T + 1)
    True
    >>> x.eval(GaussRat(1)) == GaussRat(Fraction(1, 2))
    True
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = UPoly._coerce(num)
        den = UPoly([1]) if den is None else UPoly._coerce(den)
        if den is None or num is None:
            raise TypeError("bad RatFunc parts")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = UPoly([1])
        else:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.coeffs[-1]
            if lead != QI_ONE:
                inv = lead.inverse()
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - immutability
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction, GaussRat, UPoly)):
            return RatFunc(x)
        return None

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def eval(self, t0: GaussRat) -> GaussRat:
        d = self.den.eval(t0)
        if not d:
            raise ZeroDivisionError("pole of rational function")
        return self.num.eval(t0) / d

    @property
    def conj(self):
        raise DomainError("conjugation of rational functions is not used")

    def __str__(self):
        if self.den == UPoly([1]):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"<RatFunc {self}>"


RF_ZERO = RatFunc(0)
RF_ONE = RatFunc(1)
RF_T = RatFunc(UPoly([0, 1]))


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
