"""Exact linear algebra: modular elimination over F_p, fraction-free
(Bareiss-style cross-multiplication) elimination over QQ.

Matrices are lists of lists of field elements.  The incremental RowSpace
is the workhorse: rows are fed in order, each either extends the echelon
basis or is reported dependent, which is exactly what defect reports and
base-point scans need.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .fields import FieldSpec, Scalar


class RowSpace:
    """Incremental echelon basis over a field.

    Prime fields: rows are reduced mod p with pivots normalized to 1.
    Rationals: rows are kept as integer vectors and eliminated by
    cross-multiplication (fraction-free), with a gcd squeeze per row.
    """

    def __init__(self, ncols: int, field: FieldSpec):
        self.ncols = ncols
        self.field = field
        self.pivots: List[int] = []
        self.rows: List[List] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, row: List) -> List:
        f = self.field
        if f.is_prime_field:
            p = f.p
            row = [int(x) % p for x in row]
            for piv, basis in zip(self.pivots, self.rows):
                c = row[piv]
                if c:
                    for j in range(piv, self.ncols):
                        row[j] = (row[j] - c * basis[j]) % p
            return row
        # rational path: clear denominators, then cross-multiply
        den = 1
        for x in row:
            fx = Fraction(x)
            den = den * fx.denominator // gcd(den, fx.denominator)
        irow = [int(Fraction(x) * den) for x in row]
        for piv, basis in zip(self.pivots, self.rows):
            c = irow[piv]
            if c:
                b = basis[piv]
                irow = [b * r - c * s for r, s in zip(irow, basis)]
        g = 0
        for x in irow:
            g = gcd(g, x)
        if g > 1:
            irow = [x // g for x in irow]
        return irow

    def residual(self, row: Sequence) -> List:
        """Row reduced against the current basis (zero iff dependent)."""
        return self._reduce(list(row))

    def contains(self, row: Sequence) -> bool:
        return not any(self.residual(row))

    def add(self, row: Sequence) -> bool:
        """Insert a row; returns True if it increased the rank."""
        red = self._reduce(list(row))
        piv = next((j for j, x in enumerate(red) if x), None)
        if piv is None:
            return False
        f = self.field
        if f.is_prime_field:
            inv = f.inv(red[piv])
            red = [(x * inv) % f.p for x in red]
        elif red[piv] < 0:
            red = [-x for x in red]
        # keep basis rows sorted by pivot for deterministic reduction
        idx = next((i for i, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.pivots.insert(idx, piv)
        self.rows.insert(idx, red)
        return True


def rank_and_dependents(rows: Sequence[Sequence], ncols: int, field: FieldSpec) -> Tuple[int, List[int]]:
    """Feed rows in order; dependents[i] are indices whose row lies in the
    span of the preceding ones."""
    space = RowSpace(ncols, field)
    dependents = []
    for i, row in enumerate(rows):
        if not space.add(row):
            dependents.append(i)
    return space.rank, dependents


def rank(matrix: Sequence[Sequence], field: FieldSpec) -> int:
    if not matrix:
        return 0
    r, _ = rank_and_dependents(matrix, len(matrix[0]), field)
    return r


def rref(matrix: Sequence[Sequence], field: FieldSpec) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form with field arithmetic (Fractions over QQ)."""
    rows = [[x for x in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    f = field
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = f.inv(rows[r][col])
        rows[r] = [f.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(matrix: Sequence[Sequence], ncols: int, field: FieldSpec) -> List[List[Scalar]]:
    """Basis of the right nullspace; deterministic (one vector per free column)."""
    if not matrix:
        return [[field.one if j == i else field.zero for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(matrix, field)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for fcol in free:
        v = [field.zero] * ncols
        v[fcol] = field.one
        for i, pcol in enumerate(pivots):
            v[pcol] = field.neg(R[i][fcol])
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence, field: FieldSpec) -> Optional[List[Scalar]]:
    """One particular solution of matrix @ x = rhs, or None (free vars = 0)."""
    if not matrix:
        return None if any(rhs) else []
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    R, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for i, pcol in enumerate(pivots):
        x[pcol] = R[i][ncols]
    return x


def bareiss_rank(matrix: Sequence[Sequence]) -> int:
    """Classical fraction-free Bareiss elimination over the integers/rationals.

    Independent of RowSpace; used as a cross-check oracle in tests.
    """
    rows = []
    for row in matrix:
        den = 1
        for x in row:
            fx = Fraction(x)
            den = den * fx.denominator // gcd(den, fx.denominator)
        rows.append([int(Fraction(x) * den) for x in row])
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    prev = 1
    r = 0
    for col in range(n):
        if r == m:
            break
        sel = next((i for i in range(r, m) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(r + 1, m):
            for j in range(col + 1, n):
                rows[i][j] = (rows[r][col] * rows[i][j] - rows[i][col] * rows[r][j]) // prev
            rows[i][col] = 0
        prev = rows[r][col]
        r += 1
    return r
