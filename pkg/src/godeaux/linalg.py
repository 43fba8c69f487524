"""Exact dense linear algebra over the rationals and the integers.

Everything here is exact: entries are Python ints or fractions.Fraction, never
floats, and there are no tolerances.  The elimination engine clears
denominators row by row and works on integer rows with cross-multiplication
updates; after every update the row is divided by its content (gcd of the
entries, computed with an early exit) so entries stay small in practice.

Reduced row echelon form of a matrix is unique, so the results do not depend
on the internal pivoting strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Number = int | Fraction


def _as_int_row(row: Sequence[Number]) -> list[int]:
    """Scale a row of ints/Fractions to integers (common denominator)."""
    denom = 1
    for x in row:
        if isinstance(x, Fraction):
            d = x.denominator
            denom = denom // gcd(denom, d) * d
    if denom == 1:
        return [int(x) for x in row]
    out = []
    for x in row:
        if isinstance(x, Fraction):
            out.append(x.numerator * (denom // x.denominator))
        else:
            out.append(x * denom)
    return out


def _content(row: Sequence[int]) -> int:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _reduce_content(row: list[int]) -> list[int]:
    g = _content(row)
    if g > 1:
        return [x // g for x in row]
    return row


def _normalize(row: list[int]) -> list[int]:
    """Divide by content and make the first nonzero entry positive."""
    row = _reduce_content(row)
    for x in row:
        if x:
            if x < 0:
                return [-v for v in row]
            return row
    return row


def _cross_eliminate(row: list[int], prow: list[int], col: int) -> list[int]:
    """Return p*row - a*prow scaled to kill row[col], content-reduced."""
    a = row[col]
    p = prow[col]
    g = gcd(p, a)
    mp, ma = p // g, a // g
    if mp == 1:
        out = [x - ma * y for x, y in zip(row, prow)]
    elif mp == -1:
        out = [-x - ma * y for x, y in zip(row, prow)]
    else:
        out = [mp * x - ma * y for x, y in zip(row, prow)]
    return _reduce_content(out)


def _forward(irows: list[list[int]], ncols: int) -> list[tuple[int, list[int]]]:
    """Forward elimination; returns (pivot column, row) pairs, columns ascending."""
    pending = [r for r in irows if any(r)]
    pivots: list[tuple[int, list[int]]] = []
    for col in range(ncols):
        if not pending:
            break
        cands = [i for i, r in enumerate(pending) if r[col]]
        if not cands:
            continue
        # smallest pivot magnitude keeps coefficient growth down
        best = min(cands, key=lambda i: (abs(pending[i][col]), i))
        prow = _normalize(pending.pop(best))
        nxt = []
        for r in pending:
            if r[col]:
                r = _cross_eliminate(r, prow, col)
                if not any(r):
                    continue
            nxt.append(r)
        pending = nxt
        pivots.append((col, prow))
    return pivots


def _back_substitute(pivots: list[tuple[int, list[int]]]) -> list[tuple[int, list[int]]]:
    """Make the echelon rows fully reduced (zeros above every pivot)."""
    for i in range(len(pivots) - 1, -1, -1):
        col, row = pivots[i]
        for j in range(i + 1, len(pivots)):
            cj, rowj = pivots[j]
            if row[cj]:
                row = _cross_eliminate(row, rowj, cj)
        pivots[i] = (col, _normalize(row))
    return pivots


@dataclass(frozen=True)
class RrefResult:
    rows: list[list[Fraction]]
    pivot_columns: tuple[int, ...]
    rank: int


def rref(rows: Sequence[Sequence[Number]], ncols: int) -> RrefResult:
    """Reduced row echelon form (pivots 1, zeros above and below each pivot).

    Returns the full matrix, same shape as the input, with zero rows at the
    bottom.  The result is the canonical RREF, unique for the row space.
    """
    for r in rows:
        if len(r) != ncols:
            raise ValueError("row length does not match ncols")
    pivots = _back_substitute(_forward([_as_int_row(r) for r in rows], ncols))
    out = []
    for col, row in pivots:
        p = row[col]
        out.append([Fraction(x, p) for x in row])
    zero = [Fraction(0)] * ncols
    while len(out) < len(rows):
        out.append(zero[:])
    return RrefResult(out, tuple(c for c, _ in pivots), len(pivots))


def rank_of(rows: Sequence[Sequence[Number]], ncols: int) -> int:
    for r in rows:
        if len(r) != ncols:
            raise ValueError("row length does not match ncols")
    return len(_forward([_as_int_row(r) for r in rows], ncols))


def kernel_basis(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : M x = 0}, one vector per free column, columns ascending.

    The vector for free column j has a 1 in position j and is supported on j
    and the pivot columns; this is the standard basis read off the RREF.
    """
    for r in rows:
        if len(r) != ncols:
            raise ValueError("row length does not match ncols")
    pivots = _back_substitute(_forward([_as_int_row(r) for r in rows], ncols))
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for j in range(ncols):
        if j in pivot_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(1)
        for c, row in pivots:
            if row[j]:
                vec[c] = Fraction(-row[j], row[c])
        basis.append(vec)
    return basis


def membership(target: Sequence[Number], vectors: Sequence[Sequence[Number]]) -> Optional[list[Fraction]]:
    """Coefficients c with sum(c_i * vectors[i]) == target, or None.

    When the vectors are dependent the returned combination is the canonical
    one read off the RREF (free coefficients zero).
    """
    width = len(target)
    for v in vectors:
        if len(v) != width:
            raise ValueError("vector length does not match target")
    if not vectors:
        return [] if not any(target) else None
    # solve A c = t where the columns of A are the vectors
    aug = []
    for i in range(width):
        aug.append([Fraction(v[i]) for v in vectors] + [Fraction(target[i])])
    res = rref(aug, len(vectors) + 1)
    if len(vectors) in res.pivot_columns:
        return None
    coeffs = [Fraction(0)] * len(vectors)
    for row, col in zip(res.rows, res.pivot_columns):
        coeffs[col] = row[-1]
    return coeffs


class SpanBuilder:
    """Incremental row span in fully reduced echelon form, exact.

    Rows are stored as integer vectors with content 1 and positive pivot;
    insertion order does not affect the span, and the stored rows are the
    canonical RREF of everything inserted so far.
    """

    def __init__(self, width: int):
        self.width = width
        self.pivot_cols: list[int] = []
        self.rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def residual(self, row: Sequence[Number]) -> list[int]:
        """Reduce a row against the span; zero iff the row lies in it."""
        if len(row) != self.width:
            raise ValueError("row length does not match width")
        r = _as_int_row(row)
        for col in self.pivot_cols:
            if r[col]:
                r = _cross_eliminate(r, self.rows[col], col)
        return r

    def contains(self, row: Sequence[Number]) -> bool:
        return not any(self.residual(row))

    def insert(self, row: Sequence[Number]) -> Optional[int]:
        """Add a row; returns its new pivot column, or None if dependent."""
        r = self.residual(row)
        for col, x in enumerate(r):
            if x:
                break
        else:
            return None
        r = _normalize(r)
        # keep existing rows reduced against the new pivot
        for c in self.pivot_cols:
            stored = self.rows[c]
            if stored[col]:
                self.rows[c] = _normalize(_cross_eliminate(stored, r, col))
        self.rows[col] = r
        self.pivot_cols.append(col)
        self.pivot_cols.sort()
        return col


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("inner dimensions do not match")
    if not b:
        return [[] for _ in a]
    nb = len(b[0])
    return [[sum(ra[k] * b[k][j] for k in range(len(b))) for j in range(nb)] for ra in a]


def det_int(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    d: list[list[int]]
    u: list[list[int]]
    v: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))]


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> SnfResult:
    """Smith normal form: u*a*v = d with u, v unimodular.

    The diagonal of d is nonnegative and each entry divides the next.
    """
    nrows = len(rows)
    a = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("row length does not match ncols")
        for x in r:
            if not isinstance(x, int):
                raise TypeError("smith_normal_form needs integer entries")
        a.append(list(r))
    u = _identity(nrows)
    v = _identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, mult):
        a[dst] = [x + mult * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + mult * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, mult):
        for row in a:
            row[dst] += mult * row[src]
        for row in v:
            row[dst] += mult * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if a[t][t] < 0:
            negate_row(t)
        # enforce divisibility of the rest of the block by the pivot
        p = a[t][t]
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1
    return SnfResult(a, u, v)
