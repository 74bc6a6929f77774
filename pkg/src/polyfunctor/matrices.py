"""Basis-labelled matrices with exact scalar or polynomial entries.

A LinearMapMatrix stores explicit row and column labels so induced maps of
functors stay auditable.  Entries are GradedPoly values over a declared
entry ring; a ring with no variables represents plain scalars.  Also home to
the small exact linear algebra the package needs: Gaussian rank over a
field and fraction-free Bareiss determinants for polynomial matrices.
"""

from __future__ import annotations

from .errors import AlgebraError, InternalCheckError
from .fields import FieldDescriptor
from .groebner import divide_exact
from .rings import GradedPoly, GradedRing


def scalar_entry_ring(field: FieldDescriptor) -> GradedRing:
    """Variable-free ring whose polynomials are plain field constants."""
    return GradedRing(field, ())


class LinearMapMatrix:
    """Matrix of a linear map between spaces with labelled bases."""

    __slots__ = ("row_labels", "col_labels", "ring", "rows", "_row_pos", "_col_pos")

    def __init__(self, row_labels, col_labels, ring: GradedRing, rows):
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self.ring = ring
        coerced = []
        for row in rows:
            out = []
            for entry in row:
                if isinstance(entry, GradedPoly):
                    if entry.ring != ring:
                        raise AlgebraError("matrix entry in a foreign ring")
                    out.append(entry)
                else:
                    out.append(ring.const(entry))
            coerced.append(tuple(out))
        self.rows = tuple(coerced)
        if len(self.rows) != len(self.row_labels):
            raise AlgebraError("row count does not match row labels")
        for row in self.rows:
            if len(row) != len(self.col_labels):
                raise AlgebraError("column count does not match column labels")
        self._row_pos = {lab: i for i, lab in enumerate(self.row_labels)}
        self._col_pos = {lab: i for i, lab in enumerate(self.col_labels)}

    @property
    def shape(self):
        return (len(self.row_labels), len(self.col_labels))

    def entry(self, i: int, j: int) -> GradedPoly:
        return self.rows[i][j]

    def entry_by_label(self, row_label, col_label) -> GradedPoly:
        return self.rows[self._row_pos[row_label]][self._col_pos[col_label]]

    def column(self, j: int):
        return tuple(row[j] for row in self.rows)

    def compose(self, other: "LinearMapMatrix") -> "LinearMapMatrix":
        """Matrix of self after other (self @ other)."""
        if self.ring != other.ring:
            raise AlgebraError("composition across entry rings")
        if self.col_labels != other.row_labels:
            raise AlgebraError("inner labels do not match in composition")
        zero = self.ring.zero()
        out = []
        for row in self.rows:
            live = [(j, e) for j, e in enumerate(row) if e]
            new_row = []
            for k in range(len(other.col_labels)):
                acc = zero
                for j, e in live:
                    o = other.rows[j][k]
                    if o:
                        acc = acc + e * o
                new_row.append(acc)
            out.append(new_row)
        return LinearMapMatrix(self.row_labels, other.col_labels, self.ring, out)

    def __matmul__(self, other):
        return self.compose(other)

    def scale(self, factor) -> "LinearMapMatrix":
        return LinearMapMatrix(
            self.row_labels,
            self.col_labels,
            self.ring,
            [[e * factor for e in row] for row in self.rows],
        )

    def map_entries(self, func, ring: GradedRing | None = None) -> "LinearMapMatrix":
        return LinearMapMatrix(
            self.row_labels,
            self.col_labels,
            ring or self.ring,
            [[func(e) for e in row] for row in self.rows],
        )

    def is_identity(self) -> bool:
        if self.row_labels != self.col_labels:
            return False
        one = self.ring.one()
        zero = self.ring.zero()
        for i, row in enumerate(self.rows):
            for j, e in enumerate(row):
                if e != (one if i == j else zero):
                    return False
        return True

    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def __eq__(self, other):
        return (
            isinstance(other, LinearMapMatrix)
            and self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        raise TypeError("matrices are not hashable")

    def __str__(self):
        lines = [f"rows: {list(self.row_labels)}", f"cols: {list(self.col_labels)}"]
        for row in self.rows:
            lines.append("[" + ", ".join(str(e) for e in row) + "]")
        return "\n".join(lines)


def space_labels(n: int):
    return tuple(("v", i) for i in range(n))


def identity_matrix(labels, ring: GradedRing) -> LinearMapMatrix:
    labels = tuple(labels)
    one = ring.one()
    zero = ring.zero()
    rows = [[one if i == j else zero for j in range(len(labels))] for i in range(len(labels))]
    return LinearMapMatrix(labels, labels, ring, rows)


def space_matrix(field: FieldDescriptor, entries, ring: GradedRing | None = None) -> LinearMapMatrix:
    """Matrix of a linear map between standard spaces, rows of scalars."""
    ring = ring or scalar_entry_ring(field)
    rows = [list(row) for row in entries]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    return LinearMapMatrix(space_labels(m), space_labels(n), ring, rows)


def shift_embedding(field: FieldDescriptor, u: int, n: int) -> LinearMapMatrix:
    """Embedding of the n-space as the last n coordinates of the (u+n)-space."""
    rows = [[1 if a == u + b else 0 for b in range(n)] for a in range(u + n)]
    return space_matrix(field, rows)


def shift_projection(field: FieldDescriptor, u: int, n: int) -> LinearMapMatrix:
    """Projection of the (u+n)-space onto its last n coordinates."""
    rows = [[1 if a == u + b else 0 for a in range(u + n)] for b in range(n)]
    return space_matrix(field, rows)


def base_projection(field: FieldDescriptor, u: int, n: int, ring: GradedRing | None = None) -> LinearMapMatrix:
    """Projection of the (u+n)-space onto its first u coordinates."""
    ring = ring or scalar_entry_ring(field)
    rows = [[ring.one() if a == b else ring.zero() for b in range(u + n)] for a in range(u)]
    return LinearMapMatrix(space_labels(u), space_labels(u + n), ring, rows)


def graft_columns(identity_side: int, tail: LinearMapMatrix) -> LinearMapMatrix:
    """[I | T] for a map from a (u+n)-space to the u-space, T the u x n tail."""
    u = identity_side
    ring = tail.ring
    if len(tail.row_labels) != u:
        raise AlgebraError("tail height must equal the identity side")
    n = len(tail.col_labels)
    rows = []
    for a in range(u):
        row = [ring.one() if a == b else ring.zero() for b in range(u)]
        row.extend(tail.rows[a])
        rows.append(row)
    return LinearMapMatrix(space_labels(u), space_labels(u + n), ring, rows)


def matrix_rank(entries, field: FieldDescriptor) -> int:
    """Rank of a matrix of scalars, by exact Gaussian elimination."""
    rows = [[field.scalar(e) for e in row] for row in entries]
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, m) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [e * inv for e in rows[rank]]
        for i in range(m):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def poly_matrix_det(rows, ring: GradedRing) -> GradedPoly:
    """Determinant of a square polynomial matrix by fraction-free Bareiss."""
    n = len(rows)
    if n == 0:
        return ring.one()
    M = [list(row) for row in rows]
    for row in M:
        if len(row) != n:
            raise AlgebraError("determinant of a non-square matrix")
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if M[i][k]), None)
            if pivot is None:
                return ring.zero()
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                q = divide_exact(num, prev) if not prev.is_constant() else None
                if prev.is_constant():
                    M[i][j] = num * prev.constant_value().inverse()
                else:
                    if q is None:
                        raise InternalCheckError("Bareiss division failed")
                    M[i][j] = q
            M[i][k] = ring.zero()
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det
