"""Exact integer and F_p linear algebra backing the homology computations.

Matrices are dense tuples of Python ints, so there is no overflow; sizes here
are the handful of generators per degree of a finite complex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import AlgebraError


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with optional row/column labels (degree bookkeeping)."""

    entries: tuple[tuple[int, ...], ...]
    ncols: int
    row_labels: tuple | None = None
    col_labels: tuple | None = None

    def __post_init__(self):
        for r in self.entries:
            if len(r) != self.ncols:
                raise AlgebraError("ragged matrix")
        if self.row_labels is not None and len(self.row_labels) != len(self.entries):
            raise AlgebraError("row labels inconsistent with shape")
        if self.col_labels is not None and len(self.col_labels) != self.ncols:
            raise AlgebraError("column labels inconsistent with shape")

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None, row_labels=None, col_labels=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise AlgebraError("empty matrix needs an explicit column count")
            ncols = len(rows[0])
        return cls(rows, ncols, row_labels, col_labels)

    @classmethod
    def zero(cls, nrows: int, ncols: int):
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise AlgebraError("shape mismatch in matrix product")
        rows = tuple(
            tuple(
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.ncols))
                for j in range(other.ncols)
            )
            for i in range(self.nrows)
        )
        return IntMatrix(rows, other.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)


def rank_f2(m: IntMatrix) -> int:
    """Rank over F2 by bitset Gaussian elimination."""
    rows = []
    for r in m.entries:
        bits = 0
        for j, x in enumerate(r):
            if x & 1:
                bits |= 1 << j
        if bits:
            rows.append(bits)
    rank = 0
    for col in range(m.ncols):
        mask = 1 << col
        pivot = next((i for i in range(rank, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & mask:
                rows[i] ^= rows[rank]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank over the prime field F_p."""
    if p == 2:
        return rank_f2(m)
    rows = [[x % p for x in r] for r in m.entries]
    rank = 0
    for col in range(m.ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def smith_normal_form(m: IntMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors of an integer matrix, each dividing the next."""
    a = [list(r) for r in m.entries]
    nrows, ncols = m.shape
    invariants: list[int] = []
    top = 0
    while True:
        # locate a nonzero entry of minimal absolute value in the submatrix
        pivot = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]

        # reduce the pivot row and column; restart whenever a smaller entry appears
        dirty = False
        for i in range(top + 1, nrows):
            if a[i][top]:
                q = a[i][top] // a[top][top]
                for j in range(top, ncols):
                    a[i][j] -= q * a[top][j]
                if a[i][top]:
                    dirty = True
        for j in range(top + 1, ncols):
            if a[top][j]:
                q = a[top][j] // a[top][top]
                for i in range(top, nrows):
                    a[i][j] -= q * a[i][top]
                if a[top][j]:
                    dirty = True
        if dirty:
            continue

        # pivot must divide the whole remaining block for the divisibility chain
        offender = None
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if a[i][j] % a[top][top]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, ncols):
                a[top][j] += a[offender][j]
            continue

        invariants.append(abs(a[top][top]))
        top += 1
        if top == nrows or top == ncols:
            break

    return tuple(invariants)


def integer_rank(m: IntMatrix) -> int:
    return len(smith_normal_form(m))
