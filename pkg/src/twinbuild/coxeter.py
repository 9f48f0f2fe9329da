"""Coxeter systems of types A_{n-1} and affine A_{n-1}.

Words, deterministic normal forms, length and weighted length, Bruhat
order, parabolic coset enumeration, and the affine-permutation form of
group elements.

Group elements are computed on *windows* (see `_wkernel_py`): the finite
symmetric group embeds as the genuine permutations, the affine symmetric
group as the periodic bijections of Z.  The window kernel is compiled when
the extension built; `KERNEL_IMPL` records which implementation is active.

>>> M = coxeter_matrix("finite-A", 3)
>>> reduce_word((1, 2, 1, 1, 2, 1), M)
()
>>> word_length((1, 2, 1), M)
3
>>> bruhat_leq((1,), (2,), M)
False
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

try:  # pragma: no cover - exercised via the parity test
    from . import _wkernel as _k
except ImportError:  # pragma: no cover
    from . import _wkernel_py as _k

KERNEL_IMPL = _k.__name__

widentity = _k.identity
wgen = _k.gen
wcompose = _k.compose
winvert = _k.invert
wlength = _k.length
wdescents_right = _k.right_descents

INFBOND = math.inf

__all__ = [
    "INFBOND",
    "KERNEL_IMPL",
    "CoxeterMatrix",
    "coxeter_matrix",
    "reduce_word",
    "word_length",
    "generalized_length",
    "bruhat_leq",
    "bruhat_leq_subword",
    "min_coset_reps",
    "longest_element",
    "AffineWeylElt",
    "word_to_affine",
    "affine_to_word",
    "word_to_window",
    "window_to_word",
    "wdescents_left",
    "coset_min_split",
    "min_double_coset_rep",
    "widentity",
    "wgen",
    "wcompose",
    "winvert",
    "wlength",
    "wdescents_right",
]


# ---------------------------------------------------------------------------
# Coxeter matrices
# ---------------------------------------------------------------------------


class CoxeterMatrix:
    """Symmetric matrix of bond orders m_ij over labels 1..rank.

    Entries are positive integers or the infinity sentinel ``INFBOND``
    (never 0).  Only the path diagrams (finite type A) and cycle diagrams
    (affine type A) are operated on; the window size of the underlying
    permutation model is ``self.n``.
    """

    __slots__ = ("entries", "rank", "kind", "n")

    def __init__(self, entries):
        entries = tuple(
            tuple(INFBOND if e == INFBOND else int(e) for e in row)
            for row in entries
        )
        r = len(entries)
        if r == 0 or any(len(row) != r for row in entries):
            raise DomainError("Coxeter matrix must be square and nonempty")
        for i in range(r):
            if entries[i][i] != 1:
                raise DomainError("diagonal entries must be 1")
            for j in range(r):
                if entries[i][j] != entries[j][i]:
                    raise DomainError("Coxeter matrix must be symmetric")
                if i != j and entries[i][j] != INFBOND and entries[i][j] < 2:
                    raise DomainError("off-diagonal entries must be >= 2 or infinite")
        kind, n = self._recognize(entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rank", r)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):  # pragma: no cover - immutability
        raise AttributeError("CoxeterMatrix is immutable")

    @staticmethod
    def _recognize(entries):
        r = len(entries)

        def m(i, j):
            return entries[i - 1][j - 1]

        if r == 1:
            return "finite-A", 2
        if r == 2 and m(1, 2) == INFBOND:
            return "affine-A", 2
        is_path = all(
            m(i, j) == (3 if abs(i - j) == 1 else 2)
            for i in range(1, r + 1)
            for j in range(i + 1, r + 1)
        )
        if is_path:
            return "finite-A", r + 1
        if r >= 3:
            is_cycle = all(
                m(i, j)
                == (3 if (abs(i - j) == 1 or {i, j} == {1, r}) else 2)
                for i in range(1, r + 1)
                for j in range(i + 1, r + 1)
            )
            if is_cycle:
                return "affine-A", r
        return "unsupported", 0

    @property
    def generators(self):
        return tuple(range(1, self.rank + 1))

    def is_affine(self) -> bool:
        return self.kind == "affine-A"

    def bond(self, i: int, j: int):
        return self.entries[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, CoxeterMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def to_json(self):
        return [
            ["inf" if e == INFBOND else e for e in row] for row in self.entries
        ]

    @staticmethod
    def from_json(data) -> "CoxeterMatrix":
        return CoxeterMatrix(
            [[INFBOND if e == "inf" else int(e) for e in row] for row in data]
        )

    def __repr__(self):
        return f"<CoxeterMatrix {self.kind} rank {self.rank}>"


def coxeter_matrix(kind: str, n: int) -> CoxeterMatrix:
    """The path diagram A_{n-1} (kind 'finite-A') or the n-cycle diagram
    affine A_{n-1} (kind 'affine-A'); n is the matrix size of SL_n.

    >>> coxeter_matrix("affine-A", 2).bond(1, 2)
    inf
    >>> coxeter_matrix("finite-A", 4).bond(1, 3)
    2
    """
    if n < 2:
        raise DomainError(f"rank parameter n = {n} must be at least 2")
    if kind == "finite-A":
        r = n - 1
        return CoxeterMatrix(
            [
                [1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(r)]
                for i in range(r)
            ]
        )
    if kind == "affine-A":
        if n == 2:
            return CoxeterMatrix([[1, INFBOND], [INFBOND, 1]])
        return CoxeterMatrix(
            [
                [
                    1
                    if i == j
                    else (3 if (abs(i - j) == 1 or {i, j} == {0, n - 1}) else 2)
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )
    raise DomainError(f"unknown Coxeter kind {kind!r}")


def _require_supported(M: CoxeterMatrix):
    if M.kind == "unsupported":
        raise DomainError(
            "only path (finite A) and cycle (affine A) diagrams are supported"
        )


def _check_word(word, M: CoxeterMatrix):
    word = tuple(int(i) for i in word)
    for i in word:
        if not 1 <= i <= M.rank:
            raise DomainError(f"generator index {i} outside 1..{M.rank}")
    return word


# ---------------------------------------------------------------------------
# Words and windows
# ---------------------------------------------------------------------------


def word_to_window(word, M: CoxeterMatrix):
    """Multiply out a generator word into a window."""
    _require_supported(M)
    word = _check_word(word, M)
    u = widentity(M.n)
    for i in word:
        u = wcompose(u, wgen(i, M.n))
    return u


def wdescents_left(u):
    """Generators s with length(s u) < length(u)."""
    return wdescents_right(winvert(u))


def window_to_word(u, M: CoxeterMatrix):
    """Deterministic normal form: the lexicographically least reduced word.

    Peels the smallest left descent repeatedly; the resulting word is the
    lex-least reduced expression under the order s_1 < s_2 < ...
    """
    _require_supported(M)
    word = []
    e = widentity(M.n)
    while u != e:
        s = min(wdescents_left(u))
        word.append(s)
        u = wcompose(wgen(s, M.n), u)
    return tuple(word)


def reduce_word(word, M: CoxeterMatrix):
    """Normal form of a word: lex-least reduced expression of its element.

    >>> M = coxeter_matrix("finite-A", 3)
    >>> reduce_word((2, 1, 2), M)
    (1, 2, 1)
    """
    return window_to_word(word_to_window(word, M), M)


def word_length(word, M: CoxeterMatrix) -> int:
    """Coxeter length of the element spelled by the word."""
    return wlength(word_to_window(word, M))


def generalized_length(word, M: CoxeterMatrix, weights):
    """Weighted length: sum of weights over a reduced expression.

    ``weights`` maps every generator index to a value in an abelian group;
    well-definedness requires equal weights across bonds of finite odd
    order, which is validated.
    """
    _require_supported(M)
    for i in M.generators:
        if i not in weights:
            raise DomainError(f"missing weight for generator {i}")
    for i in M.generators:
        for j in M.generators:
            if i < j:
                m = M.bond(i, j)
                if m != INFBOND and m % 2 == 1 and weights[i] != weights[j]:
                    raise DomainError(
                        f"weights must agree across the odd bond {i}-{j}"
                    )
    reduced = reduce_word(word, M)
    total = 0
    for i in reduced:
        total = total + weights[i]
    return total


# ---------------------------------------------------------------------------
# Bruhat order
# ---------------------------------------------------------------------------


@lru_cache(maxsize=200_000)
def _bruhat_leq_windows(v, w):
    if wlength(v) >= wlength(w):
        return v == w
    s = min(wdescents_left(w))
    g = wgen(s, len(w))
    sv = wcompose(g, v)
    sw = wcompose(g, w)
    if wlength(sv) < wlength(v):
        return _bruhat_leq_windows(sv, sw)
    return _bruhat_leq_windows(v, sw)


def bruhat_leq(v, w, M: CoxeterMatrix) -> bool:
    """Bruhat order v <= w, by the lifting property.

    >>> M = coxeter_matrix("affine-A", 4)
    >>> bruhat_leq((4, 1), (2, 4, 1), M)
    True
    """
    return _bruhat_leq_windows(word_to_window(v, M), word_to_window(w, M))


def bruhat_leq_subword(v, w, M: CoxeterMatrix) -> bool:
    """Bruhat order by the subword characterization (test oracle).

    True iff some subsequence of a fixed reduced word for w spells v.
    Exponential in length(w); kept as an independent cross-check for
    `bruhat_leq`.
    """
    vw = word_to_window(v, M)
    wred = reduce_word(w, M)
    target_len = wlength(vw)
    gens = [wgen(i, M.n) for i in range(1, M.rank + 1)]
    seen = {widentity(M.n)}
    for s in wred:
        extra = set()
        for u in seen:
            u2 = wcompose(u, gens[s - 1])
            if wlength(u2) <= target_len:
                extra.add(u2)
        seen |= extra
    return vw in seen


# ---------------------------------------------------------------------------
# Parabolic quotients
# ---------------------------------------------------------------------------


def _check_subset(J, M: CoxeterMatrix):
    J = frozenset(int(i) for i in J)
    for i in J:
        if not 1 <= i <= M.rank:
            raise DomainError(f"generator index {i} outside 1..{M.rank}")
    return J


def min_coset_reps(M: CoxeterMatrix, J, max_length: int, within=None):
    """All minimal-length representatives of cosets w W_J with length
    <= max_length, sorted by (length, lex); one per coset.

    With ``within = K`` (a generator subset containing J) the enumeration
    is restricted to the standard parabolic subgroup W_K, giving the
    quotient W_K / W_J.

    >>> M = coxeter_matrix("affine-A", 4)
    >>> min_coset_reps(M, {2, 4}, 4, within={1, 2, 4})[:3]
    [(), (1,), (2, 1)]
    """
    _require_supported(M)
    J = _check_subset(J, M)
    if within is None:
        gens = list(M.generators)
    else:
        K = _check_subset(within, M)
        if not J <= K:
            raise DomainError("within must contain J")
        gens = sorted(K)
    n = M.n
    e = widentity(n)
    gwins = {s: wgen(s, n) for s in gens}
    seen = {e}
    level = [e]
    out = [[e]]
    for ell in range(max_length):
        nxt = []
        for u in level:
            for s in gens:
                u2 = wcompose(gwins[s], u)
                if u2 in seen or wlength(u2) != ell + 1:
                    continue
                if any(d in J for d in wdescents_right(u2)):
                    continue
                seen.add(u2)
                nxt.append(u2)
        if not nxt:
            break
        out.append(nxt)
        level = nxt
    words = [window_to_word(u, M) for lv in out for u in lv]
    words.sort(key=lambda w: (len(w), w))
    return words


def coset_min_split(u, J):
    """Split a window as u = u_min * u_J with u_min J-minimal, u_J in W_J.

    Returns the pair of windows; lengths add.
    """
    n = len(u)
    uj = widentity(n)
    while True:
        ds = [s for s in wdescents_right(u) if s in J]
        if not ds:
            return u, uj
        s = ds[0]
        g = wgen(s, n)
        u = wcompose(u, g)
        uj = wcompose(g, uj)


def min_double_coset_rep(u, J, K):
    """The unique minimal-length element of the double coset W_J u W_K."""
    n = len(u)
    while True:
        lds = [s for s in wdescents_left(u) if s in J]
        if lds:
            u = wcompose(wgen(lds[0], n), u)
            continue
        rds = [s for s in wdescents_right(u) if s in K]
        if rds:
            u = wcompose(u, wgen(rds[0], n))
            continue
        return u


def longest_element(M: CoxeterMatrix):
    """The longest element of a finite type-A system, as a word.

    >>> longest_element(coxeter_matrix("finite-A", 3))
    (1, 2, 1)
    """
    _require_supported(M)
    if M.is_affine():
        raise DomainError("the group is infinite; no longest element")
    n = M.n
    w0 = tuple(range(n, 0, -1))
    return window_to_word(w0, M)


# ---------------------------------------------------------------------------
# Affine permutations as (permutation, shift vector) pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineWeylElt:
    """An affine Weyl group element as (pi, k): the monomial matrix with
    M e_j = z^{k_{pi(j)}} e_{pi(j)}; the shifts sum to zero."""

    perm: tuple
    shifts: tuple

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise DomainError("perm is not a permutation of 1..n")
        if len(self.shifts) != n or sum(self.shifts) != 0:
            raise DomainError("shifts must have length n and sum 0")

    @property
    def n(self):
        return len(self.perm)

    @staticmethod
    def identity(n: int) -> "AffineWeylElt":
        return AffineWeylElt(tuple(range(1, n + 1)), (0,) * n)

    def to_window(self):
        return tuple(
            self.perm[j] - self.n * self.shifts[self.perm[j] - 1]
            for j in range(self.n)
        )

    @staticmethod
    def from_window(u) -> "AffineWeylElt":
        n = len(u)
        perm = [0] * n
        shifts = [0] * n
        for j in range(n):
            r = (u[j] - 1) % n + 1
            perm[j] = r
            shifts[r - 1] = (r - u[j]) // n
        return AffineWeylElt(tuple(perm), tuple(shifts))

    def compose(self, other: "AffineWeylElt") -> "AffineWeylElt":
        """Group product self * other (matrix product of monomial forms)."""
        if self.n != other.n:
            raise DomainError("size mismatch")
        n = self.n
        perm = tuple(self.perm[other.perm[j] - 1] for j in range(n))
        shifts = [0] * n
        for i in range(n):
            # (pi1 . k2)_i = k2 at pi1^{-1}(i)
            pre = self.perm.index(i + 1)
            shifts[i] = self.shifts[i] + other.shifts[pre]
        return AffineWeylElt(perm, tuple(shifts))

    def inverse(self) -> "AffineWeylElt":
        n = self.n
        perm = [0] * n
        for j in range(n):
            perm[self.perm[j] - 1] = j + 1
        shifts = [-self.shifts[self.perm[i] - 1] for i in range(n)]
        return AffineWeylElt(tuple(perm), tuple(shifts))

    def length(self) -> int:
        return wlength(self.to_window())


def word_to_affine(word, n: int) -> AffineWeylElt:
    """Multiply out a word over the affine A_{n-1} generators.

    >>> word_to_affine((2,), 2)
    AffineWeylElt(perm=(2, 1), shifts=(-1, 1))
    """
    M = coxeter_matrix("affine-A", n)
    return AffineWeylElt.from_window(word_to_window(word, M))


def affine_to_word(elt: AffineWeylElt):
    """Normal-form word of an affine permutation."""
    M = coxeter_matrix("affine-A", elt.n)
    return window_to_word(elt.to_window(), M)


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()
