"""Finite-degree polynomial functors as syntax trees.

Expressions are built from a constant space, the identity, direct sums,
tensor products, symmetric and exterior powers, a shift by a constant space,
quotient by one summand of the normalised direct-sum form, and the two
halves of the symmetric/alternating splitting of the tensor square (a
built-in relabelling that is refused in characteristic 2).

Every expression normalises to a direct sum of homogeneous summands, where
summand multiplicities are carried as constant tensor factors so induced
maps stay uniform.  Bases are explicit and deterministic: symmetric powers
use sorted multisets, exterior powers strictly increasing index tuples,
tensor products row-major composite indices; matrices of induced maps carry
these labels so every entry is auditable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import AlgebraError, CharacteristicError, ParseError
from .fields import FieldDescriptor
from .matrices import (
    LinearMapMatrix,
    identity_matrix,
    matrix_rank,
    shift_embedding,
    shift_projection,
    space_labels,
)

# ---------------------------------------------------------------------------
# expression trees
# ---------------------------------------------------------------------------


class FunctorExpr:
    """Base class; all concrete expressions are frozen dataclasses."""

    def degree(self) -> int:
        raise NotImplementedError

    def __str__(self):
        return format_functor(self)


@dataclass(frozen=True)
class ConstF(FunctorExpr):
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise AlgebraError("constant space dimension must be nonnegative")

    def degree(self):
        return 0


@dataclass(frozen=True)
class IdF(FunctorExpr):
    def degree(self):
        return 1


@dataclass(frozen=True)
class SumF(FunctorExpr):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise AlgebraError("empty direct sum")

    def degree(self):
        return max(p.degree() for p in self.parts)


@dataclass(frozen=True)
class TensorF(FunctorExpr):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise AlgebraError("empty tensor product")

    def degree(self):
        return sum(f.degree() for f in self.factors)


@dataclass(frozen=True)
class SymF(FunctorExpr):
    power: int
    inner: FunctorExpr

    def __post_init__(self):
        if self.power < 0:
            raise AlgebraError("symmetric power must be nonnegative")

    def degree(self):
        return self.power * self.inner.degree()


@dataclass(frozen=True)
class ExtF(FunctorExpr):
    power: int
    inner: FunctorExpr

    def __post_init__(self):
        if self.power < 0:
            raise AlgebraError("exterior power must be nonnegative")

    def degree(self):
        return self.power * self.inner.degree()


@dataclass(frozen=True)
class ShiftF(FunctorExpr):
    by: int
    inner: FunctorExpr

    def __post_init__(self):
        if self.by < 0:
            raise AlgebraError("shift dimension must be nonnegative")

    def degree(self):
        return self.inner.degree()


@dataclass(frozen=True)
class QuotF(FunctorExpr):
    inner: FunctorExpr
    drop_index: int

    def __post_init__(self):
        if self.drop_index < 0:
            raise AlgebraError("summand index must be nonnegative")
        if self.drop_index >= len(normalize(self.inner)):
            raise AlgebraError("summand index out of range of the normalised sum")

    def degree(self):
        kept = self.kept_summands()
        return max((s.degree() for s in kept), default=0)

    def kept_summands(self):
        summands = normalize(self.inner)
        return tuple(s for i, s in enumerate(summands) if i != self.drop_index)


@dataclass(frozen=True)
class TenSymF(FunctorExpr):
    """Symmetric half of the tensor square, coordinates y_i_j with i <= j."""

    def degree(self):
        return 2


@dataclass(frozen=True)
class TenAltF(FunctorExpr):
    """Alternating half of the tensor square, coordinates z_i_j with i < j."""

    def degree(self):
        return 2


def split_tensor_square() -> FunctorExpr:
    """The tensor square presented as symmetric plus alternating part."""
    return SumF((TenSymF(), TenAltF()))


def degree(expr: FunctorExpr) -> int:
    return expr.degree()


# ---------------------------------------------------------------------------
# dimension
# ---------------------------------------------------------------------------


def dim(expr: FunctorExpr, n: int) -> int:
    """Dimension of the value of the functor on an n-dimensional space."""
    if n < 0:
        raise AlgebraError("dimension must be nonnegative")
    if isinstance(expr, ConstF):
        return expr.size
    if isinstance(expr, IdF):
        return n
    if isinstance(expr, TenSymF):
        return n * (n + 1) // 2
    if isinstance(expr, TenAltF):
        return n * (n - 1) // 2
    if isinstance(expr, SumF):
        return sum(dim(p, n) for p in expr.parts)
    if isinstance(expr, TensorF):
        total = 1
        for f in expr.factors:
            total *= dim(f, n)
        return total
    if isinstance(expr, SymF):
        return comb(dim(expr.inner, n) + expr.power - 1, expr.power)
    if isinstance(expr, ExtF):
        return comb(dim(expr.inner, n), expr.power)
    if isinstance(expr, ShiftF):
        return dim(expr.inner, n + expr.by)
    if isinstance(expr, QuotF):
        return sum(dim(s, n) for s in expr.kept_summands())
    raise AlgebraError(f"unknown expression {expr!r}")


# ---------------------------------------------------------------------------
# normalisation into homogeneous summands
# ---------------------------------------------------------------------------


def _compositions(total: int, parts: int):
    """All tuples of nonnegative integers of the given length summing to
    total, first coordinate descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _tensor_combine(factors) -> FunctorExpr | None:
    flat = []
    const = 1
    for f in factors:
        if isinstance(f, TensorF):
            items = f.factors
        else:
            items = (f,)
        for item in items:
            if isinstance(item, ConstF):
                const *= item.size
            else:
                flat.append(item)
    if const == 0:
        return None
    if not flat:
        return ConstF(const)
    if const != 1:
        flat = [ConstF(const)] + flat
    if len(flat) == 1:
        return flat[0]
    return TensorF(tuple(flat))


def _sym_atom(power: int, summand: FunctorExpr) -> FunctorExpr | None:
    if power == 0:
        return ConstF(1)
    if isinstance(summand, ConstF):
        return ConstF(comb(summand.size + power - 1, power))
    if power == 1:
        return summand
    return SymF(power, summand)


def _ext_atom(power: int, summand: FunctorExpr) -> FunctorExpr | None:
    if power == 0:
        return ConstF(1)
    if isinstance(summand, ConstF):
        size = comb(summand.size, power)
        return ConstF(size) if size else None
    if power == 1:
        return summand
    return ExtF(power, summand)


def _shift_inward(u: int, expr: FunctorExpr) -> FunctorExpr:
    if u == 0:
        return expr
    if isinstance(expr, ConstF):
        return expr
    if isinstance(expr, IdF):
        return SumF((ConstF(u), IdF()))
    if isinstance(expr, TenSymF):
        return SumF((ConstF(u * (u + 1) // 2), TensorF((ConstF(u), IdF())), TenSymF()))
    if isinstance(expr, TenAltF):
        parts = [TensorF((ConstF(u), IdF())), TenAltF()]
        if u >= 2:
            parts.insert(0, ConstF(u * (u - 1) // 2))
        return SumF(tuple(parts))
    if isinstance(expr, SumF):
        return SumF(tuple(_shift_inward(u, p) for p in expr.parts))
    if isinstance(expr, TensorF):
        return TensorF(tuple(_shift_inward(u, f) for f in expr.factors))
    if isinstance(expr, SymF):
        return SymF(expr.power, _shift_inward(u, expr.inner))
    if isinstance(expr, ExtF):
        return ExtF(expr.power, _shift_inward(u, expr.inner))
    if isinstance(expr, ShiftF):
        return _shift_inward(u + expr.by, expr.inner)
    if isinstance(expr, QuotF):
        kept = expr.kept_summands()
        if not kept:
            return ConstF(0)
        return _shift_inward(u, SumF(kept) if len(kept) > 1 else kept[0])
    raise AlgebraError(f"unknown expression {expr!r}")


def normalize(expr: FunctorExpr) -> tuple[FunctorExpr, ...]:
    """Direct-sum list of homogeneous shift-free summands, in a fixed order."""
    if isinstance(expr, ConstF):
        return (expr,) if expr.size else ()
    if isinstance(expr, (IdF, TenSymF, TenAltF)):
        return (expr,)
    if isinstance(expr, SumF):
        out = []
        for p in expr.parts:
            out.extend(normalize(p))
        return tuple(out)
    if isinstance(expr, TensorF):
        factor_lists = [normalize(f) for f in expr.factors]
        out = []
        for choice in itertools.product(*factor_lists):
            combined = _tensor_combine(choice)
            if combined is not None:
                out.append(combined)
        return tuple(out)
    if isinstance(expr, SymF):
        inner = normalize(expr.inner)
        out = []
        for comp in _compositions(expr.power, len(inner)):
            factors = []
            dead = False
            for d_i, s_i in zip(comp, inner):
                atom = _sym_atom(d_i, s_i)
                if atom is None:
                    dead = True
                    break
                factors.append(atom)
            if dead:
                continue
            combined = _tensor_combine(factors) if factors else ConstF(1)
            if combined is not None:
                out.append(combined)
        return tuple(out)
    if isinstance(expr, ExtF):
        inner = normalize(expr.inner)
        out = []
        for comp in _compositions(expr.power, len(inner)):
            factors = []
            dead = False
            for d_i, s_i in zip(comp, inner):
                atom = _ext_atom(d_i, s_i)
                if atom is None:
                    dead = True
                    break
                factors.append(atom)
            if dead:
                continue
            combined = _tensor_combine(factors) if factors else ConstF(1)
            if combined is not None:
                out.append(combined)
        return tuple(out)
    if isinstance(expr, ShiftF):
        return normalize(_shift_inward(expr.by, expr.inner))
    if isinstance(expr, QuotF):
        return expr.kept_summands()
    raise AlgebraError(f"unknown expression {expr!r}")


@dataclass(frozen=True)
class Summand:
    label: str
    expr: FunctorExpr
    degree: int


class HomDecomposition:
    """Homogeneous decomposition: labelled summands grouped by degree."""

    def __init__(self, functor: FunctorExpr, summands):
        self.functor = functor
        self.summands = tuple(summands)
        parts: dict[int, list[Summand]] = {}
        for s in self.summands:
            parts.setdefault(s.degree, []).append(s)
        self.parts = {e: tuple(v) for e, v in sorted(parts.items())}

    def dim(self, n: int) -> int:
        return sum(dim(s.expr, n) for s in self.summands)

    def part_dim(self, e: int, n: int) -> int:
        return sum(dim(s.expr, n) for s in self.parts.get(e, ()))

    def degrees(self):
        return tuple(self.parts.keys())

    def summand(self, label: str) -> Summand:
        for s in self.summands:
            if s.label == label:
                return s
        raise AlgebraError(f"no summand labelled {label!r}")

    def index_of(self, label: str) -> int:
        for i, s in enumerate(self.summands):
            if s.label == label:
                return i
        raise AlgebraError(f"no summand labelled {label!r}")


def decompose(expr: FunctorExpr) -> HomDecomposition:
    summands = [
        Summand(f"p{i}", s, s.degree()) for i, s in enumerate(normalize(expr))
    ]
    return HomDecomposition(expr, summands)


# ---------------------------------------------------------------------------
# explicit bases
# ---------------------------------------------------------------------------


def basis_labels(expr: FunctorExpr, n: int) -> tuple:
    if isinstance(expr, ConstF):
        return tuple(("k", i) for i in range(expr.size))
    if isinstance(expr, IdF):
        return space_labels(n)
    if isinstance(expr, TenSymF):
        return tuple(("y", i, j) for i in range(n) for j in range(i, n))
    if isinstance(expr, TenAltF):
        return tuple(("z", i, j) for i in range(n) for j in range(i + 1, n))
    if isinstance(expr, SumF):
        out = []
        for idx, p in enumerate(expr.parts):
            out.extend(("s", idx, sub) for sub in basis_labels(p, n))
        return tuple(out)
    if isinstance(expr, TensorF):
        lists = [basis_labels(f, n) for f in expr.factors]
        return tuple(("t", combo) for combo in itertools.product(*lists))
    if isinstance(expr, SymF):
        inner = basis_labels(expr.inner, n)
        return tuple(
            ("sym", tuple(inner[i] for i in idx))
            for idx in itertools.combinations_with_replacement(range(len(inner)), expr.power)
        )
    if isinstance(expr, ExtF):
        inner = basis_labels(expr.inner, n)
        return tuple(
            ("ext", tuple(inner[i] for i in idx))
            for idx in itertools.combinations(range(len(inner)), expr.power)
        )
    if isinstance(expr, ShiftF):
        return basis_labels(expr.inner, n + expr.by)
    if isinstance(expr, QuotF):
        summands = normalize(expr.inner)
        out = []
        for idx, s in enumerate(summands):
            if idx == expr.drop_index:
                continue
            out.extend(("s", idx, sub) for sub in basis_labels(s, n))
        return tuple(out)
    raise AlgebraError(f"unknown expression {expr!r}")


def label_vdeg(label, split: int) -> int:
    """Number of leaf indices at or beyond the split point.

    Scaling the coordinates from the split point onward by t multiplies the
    basis element by t to this power, so the value is the homogeneous degree
    of the basis element over the moving part of a shifted space.
    """
    tag = label[0]
    if tag == "k":
        return 0
    if tag == "v":
        return 1 if label[1] >= split else 0
    if tag == "s":
        return label_vdeg(label[2], split)
    if tag == "t":
        return sum(label_vdeg(sub, split) for sub in label[1])
    if tag in ("sym", "ext"):
        return sum(label_vdeg(sub, split) for sub in label[1])
    if tag in ("y", "z"):
        return (1 if label[1] >= split else 0) + (1 if label[2] >= split else 0)
    raise AlgebraError(f"unknown basis label {label!r}")


def label_degree(label) -> int:
    return label_vdeg(label, 0)


def shift_label(label, by: int):
    """Relabel a basis element by translating every leaf index upward."""
    tag = label[0]
    if tag == "k":
        return label
    if tag == "v":
        return ("v", label[1] + by)
    if tag == "s":
        return ("s", label[1], shift_label(label[2], by))
    if tag == "t":
        return ("t", tuple(shift_label(sub, by) for sub in label[1]))
    if tag in ("sym", "ext"):
        return (tag, tuple(shift_label(sub, by) for sub in label[1]))
    if tag in ("y", "z"):
        return (tag, label[1] + by, label[2] + by)
    raise AlgebraError(f"unknown basis label {label!r}")


# ---------------------------------------------------------------------------
# induced linear maps
# ---------------------------------------------------------------------------


def _sym_power_matrix(a: LinearMapMatrix, power: int, expr: SymF) -> LinearMapMatrix:
    ring = a.ring
    n_cols = len(a.col_labels)
    n_rows = len(a.row_labels)
    col_index_tuples = list(itertools.combinations_with_replacement(range(n_cols), power))
    row_index_tuples = list(itertools.combinations_with_replacement(range(n_rows), power))
    row_pos = {idx: i for i, idx in enumerate(row_index_tuples)}
    nonzero_cols = [
        [(i, a.rows[i][j]) for i in range(n_rows) if a.rows[i][j]] for j in range(n_cols)
    ]
    zero = ring.zero()
    columns = []
    for combo in col_index_tuples:
        acc = {(): ring.one()}
        for j in combo:
            new: dict = {}
            for ms, coeff in acc.items():
                for i, entry in nonzero_cols[j]:
                    key = tuple(sorted(ms + (i,)))
                    prev = new.get(key)
                    val = coeff * entry
                    new[key] = val if prev is None else prev + val
            acc = {k: v for k, v in new.items() if v}
        columns.append(acc)
    rows = [[zero] * len(col_index_tuples) for _ in row_index_tuples]
    for cj, acc in enumerate(columns):
        for key, val in acc.items():
            rows[row_pos[key]][cj] = val
    row_labels = tuple(
        ("sym", tuple(a.row_labels[i] for i in idx)) for idx in row_index_tuples
    )
    col_labels = tuple(
        ("sym", tuple(a.col_labels[i] for i in idx)) for idx in col_index_tuples
    )
    return LinearMapMatrix(row_labels, col_labels, ring, rows)


def _small_det(ring, rows) -> object:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    det = ring.zero()
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = rows[0][j] * _small_det(ring, minor)
        det = det + term if j % 2 == 0 else det - term
    return det


def _ext_power_matrix(a: LinearMapMatrix, power: int) -> LinearMapMatrix:
    ring = a.ring
    n_cols = len(a.col_labels)
    n_rows = len(a.row_labels)
    col_tuples = list(itertools.combinations(range(n_cols), power))
    row_tuples = list(itertools.combinations(range(n_rows), power))
    rows = []
    for rt in row_tuples:
        row = []
        for ct in col_tuples:
            sub = [[a.rows[i][j] for j in ct] for i in rt]
            row.append(_small_det(ring, sub))
        rows.append(row)
    row_labels = tuple(("ext", tuple(a.row_labels[i] for i in idx)) for idx in row_tuples)
    col_labels = tuple(("ext", tuple(a.col_labels[i] for i in idx)) for idx in col_tuples)
    return LinearMapMatrix(row_labels, col_labels, ring, rows)


def _tensor_matrix(maps) -> LinearMapMatrix:
    ring = maps[0].ring
    row_lists = [m.row_labels for m in maps]
    col_lists = [m.col_labels for m in maps]
    row_combos = list(itertools.product(*[range(len(r)) for r in row_lists]))
    col_combos = list(itertools.product(*[range(len(c)) for c in col_lists]))
    rows = []
    for rc in row_combos:
        row = []
        for cc in col_combos:
            entry = ring.one()
            for m, i, j in zip(maps, rc, cc):
                e = m.rows[i][j]
                if not e:
                    entry = ring.zero()
                    break
                entry = entry * e
            row.append(entry)
        rows.append(row)
    row_labels = tuple(
        ("t", tuple(row_lists[k][i] for k, i in enumerate(rc))) for rc in row_combos
    )
    col_labels = tuple(
        ("t", tuple(col_lists[k][j] for k, j in enumerate(cc))) for cc in col_combos
    )
    return LinearMapMatrix(row_labels, col_labels, ring, rows)


def _block_diag(blocks, indices) -> LinearMapMatrix:
    ring = blocks[0].ring
    row_labels = []
    col_labels = []
    for idx, b in zip(indices, blocks):
        row_labels.extend(("s", idx, lab) for lab in b.row_labels)
        col_labels.extend(("s", idx, lab) for lab in b.col_labels)
    zero = ring.zero()
    total_rows = sum(len(b.row_labels) for b in blocks)
    total_cols = sum(len(b.col_labels) for b in blocks)
    rows = [[zero] * total_cols for _ in range(total_rows)]
    r0 = 0
    c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            for j, e in enumerate(row):
                rows[r0 + i][c0 + j] = e
        r0 += len(b.row_labels)
        c0 += len(b.col_labels)
    return LinearMapMatrix(tuple(row_labels), tuple(col_labels), ring, rows)


def _refuse_char2(field: FieldDescriptor):
    if field.characteristic == 2:
        raise CharacteristicError(
            "the symmetric/alternating tensor-square splitting is refused in characteristic 2"
        )


def _ten_sym_matrix(phi: LinearMapMatrix) -> LinearMapMatrix:
    _refuse_char2(phi.ring.field)
    ring = phi.ring
    m = len(phi.row_labels)
    n = len(phi.col_labels)
    col_pairs = [(i, j) for i in range(n) for j in range(i, n)]
    row_pairs = [(k, l) for k in range(m) for l in range(k, m)]
    rows = []
    for (k, l) in row_pairs:
        row = []
        for (i, j) in col_pairs:
            if i == j:
                row.append(phi.rows[k][i] * phi.rows[l][i])
            else:
                row.append(phi.rows[k][i] * phi.rows[l][j] + phi.rows[k][j] * phi.rows[l][i])
        rows.append(row)
    return LinearMapMatrix(
        tuple(("y",) + p for p in row_pairs),
        tuple(("y",) + p for p in col_pairs),
        ring,
        rows,
    )


def _ten_alt_matrix(phi: LinearMapMatrix) -> LinearMapMatrix:
    _refuse_char2(phi.ring.field)
    ring = phi.ring
    m = len(phi.row_labels)
    n = len(phi.col_labels)
    col_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    row_pairs = [(k, l) for k in range(m) for l in range(k + 1, m)]
    rows = []
    for (k, l) in row_pairs:
        row = []
        for (i, j) in col_pairs:
            row.append(phi.rows[k][i] * phi.rows[l][j] - phi.rows[k][j] * phi.rows[l][i])
        rows.append(row)
    return LinearMapMatrix(
        tuple(("z",) + p for p in row_pairs),
        tuple(("z",) + p for p in col_pairs),
        ring,
        rows,
    )


def induced_map(expr: FunctorExpr, phi: LinearMapMatrix) -> LinearMapMatrix:
    """Matrix of the functor applied to a linear map, on the explicit bases.

    phi maps an n-space to an m-space; entries may be scalars or polynomials
    (for instance in an auxiliary parameter).
    """
    ring = phi.ring
    if isinstance(expr, ConstF):
        return identity_matrix((("k", i) for i in range(expr.size)), ring)
    if isinstance(expr, IdF):
        return phi
    if isinstance(expr, SumF):
        blocks = [induced_map(p, phi) for p in expr.parts]
        return _block_diag(blocks, range(len(blocks)))
    if isinstance(expr, TensorF):
        return _tensor_matrix([induced_map(f, phi) for f in expr.factors])
    if isinstance(expr, SymF):
        return _sym_power_matrix(induced_map(expr.inner, phi), expr.power, expr)
    if isinstance(expr, ExtF):
        return _ext_power_matrix(induced_map(expr.inner, phi), expr.power)
    if isinstance(expr, ShiftF):
        u = expr.by
        n = len(phi.col_labels)
        m = len(phi.row_labels)
        zero = ring.zero()
        one = ring.one()
        rows = []
        for a in range(u + m):
            row = []
            for b in range(u + n):
                if a < u or b < u:
                    row.append(one if a == b else zero)
                else:
                    row.append(phi.rows[a - u][b - u])
            rows.append(row)
        widened = LinearMapMatrix(space_labels(u + m), space_labels(u + n), ring, rows)
        return induced_map(expr.inner, widened)
    if isinstance(expr, QuotF):
        summands = normalize(expr.inner)
        blocks = []
        indices = []
        for idx, s in enumerate(summands):
            if idx == expr.drop_index:
                continue
            blocks.append(induced_map(s, phi))
            indices.append(idx)
        if not blocks:
            return LinearMapMatrix((), (), ring, ())
        return _block_diag(blocks, indices)
    if isinstance(expr, TenSymF):
        return _ten_sym_matrix(phi)
    if isinstance(expr, TenAltF):
        return _ten_alt_matrix(phi)
    raise AlgebraError(f"unknown expression {expr!r}")


# ---------------------------------------------------------------------------
# shift maps and the dimension-sequence order
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftMaps:
    """Embedding/projection pair between a functor and its shift."""

    alpha: LinearMapMatrix  # value at n -> value at u+n
    beta: LinearMapMatrix  # value at u+n -> value at n
    composite_is_identity: bool
    top_iso_check: bool
    top_dim_shift: int
    top_dim_base: int


def shift_maps(P: FunctorExpr, field: FieldDescriptor, u: int, n: int) -> ShiftMaps:
    """Maps induced by the coordinate embedding and projection, with the
    checks that the composite is the identity and that the projection is an
    isomorphism on the top-degree part of the shifted functor."""
    alpha = induced_map(P, shift_embedding(field, u, n))
    beta = induced_map(P, shift_projection(field, u, n))
    composite = beta.compose(alpha)
    composite_ok = composite.is_identity()
    d = P.degree()
    big_labels = alpha.row_labels  # basis at u+n
    small_labels = alpha.col_labels  # basis at n
    top_cols = [i for i, lab in enumerate(big_labels) if label_vdeg(lab, u) == d]
    top_rows = [i for i, lab in enumerate(small_labels) if label_degree(lab) == d]
    iso = len(top_cols) == len(top_rows)
    if iso and top_rows:
        sub = [
            [beta.rows[r][c].constant_value() for c in top_cols] for r in top_rows
        ]
        iso = matrix_rank(sub, field) == len(top_rows)
    return ShiftMaps(alpha, beta, composite_ok, iso, len(top_cols), len(top_rows))


def dimension_sequence(P: FunctorExpr, top: int, n: int) -> tuple[int, ...]:
    """Dimensions of the homogeneous parts of degrees 1..top on an n-space."""
    dec = decompose(P)
    return tuple(dec.part_dim(e, n) for e in range(1, top + 1))


def compare_order(P: FunctorExpr, Q: FunctorExpr) -> str:
    """Compare dimension sequences of homogeneous parts, most significant at
    the highest degree: 'lex-smaller' means P precedes Q.

    This is the sound proxy for the well-founded order on functors: on
    spaces of dimension at least the degree, a strictly smaller functor has
    a lexicographically smaller dimension sequence.
    """
    d = max(P.degree(), Q.degree())
    N = max(d, 1)
    seq_p = dimension_sequence(P, d, N)
    seq_q = dimension_sequence(Q, d, N)
    for e in range(d, 0, -1):
        dp = seq_p[e - 1]
        dq = seq_q[e - 1]
        if dp < dq:
            return "lex-smaller"
        if dp > dq:
            return "lex-greater"
    return "dims-equal"


# ---------------------------------------------------------------------------
# dimension formulas
# ---------------------------------------------------------------------------


def dim_polynomial(expr: FunctorExpr) -> tuple[Fraction, ...]:
    """Coefficients c_0..c_d with dim(expr, n) = sum c_k n^k, by exact
    interpolation; verified on one extra sample."""
    d = expr.degree()
    points = [(n, dim(expr, n)) for n in range(d + 1)]
    coeffs = [Fraction(0)] * (d + 1)
    for i, (xi, yi) in enumerate(points):
        # Lagrange basis polynomial for node xi
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] -= c * xj
                new[k + 1] += c
            basis = new
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    check_at = d + 1
    value = sum(c * check_at**k for k, c in enumerate(coeffs))
    if value != dim(expr, check_at):
        raise AlgebraError("dimension is not polynomial of the expected degree")
    return tuple(coeffs)


def format_dim_polynomial(coeffs) -> str:
    chunks = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            body = str(c)
        else:
            mag = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            body = f"{mag}n" if k == 1 else f"{mag}n^{k}"
        if not chunks:
            chunks.append(body)
        elif c < 0 and not body.startswith("-"):
            chunks.append(f" - {str(-c) if k == 0 else body.lstrip('-')}")
        elif body.startswith("-"):
            chunks.append(f" - {body[1:]}")
        else:
            chunks.append(f" + {body}")
    return "".join(chunks) if chunks else "0"


# ---------------------------------------------------------------------------
# grammar
# ---------------------------------------------------------------------------

_FUNCTOR_TOKEN = re.compile(r"\s*(?:(?P<name>[a-z]+)|(?P<int>\d+)|(?P<op>[(),]))")


class _FunctorParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _FUNCTOR_TOKEN.match(text, pos)
            if m is None:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                raise ParseError(f"unexpected character {stripped[0]!r}", pos, text)
            for kind in ("name", "int", "op"):
                if m.group(kind):
                    self.tokens.append((kind, m.group(kind), m.start(kind)))
                    break
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def peek(self):
        return self.tokens[self.i]

    def expect(self, kind, value=None):
        k, v, pos = self.next()
        if k != kind or (value is not None and v != value):
            raise ParseError(f"expected {value or kind}", pos, self.text)
        return v

    def parse(self) -> FunctorExpr:
        expr = self.expression()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", pos, self.text)
        return expr

    def int_arg(self) -> int:
        k, v, pos = self.next()
        if k != "int":
            raise ParseError("expected an integer", pos, self.text)
        return int(v)

    def expression(self) -> FunctorExpr:
        kind, value, pos = self.next()
        if kind != "name":
            raise ParseError("expected a functor constructor", pos, self.text)
        if value == "id":
            return IdF()
        if value == "tsym":
            return TenSymF()
        if value == "talt":
            return TenAltF()
        if value == "const":
            self.expect("op", "(")
            m = self.int_arg()
            self.expect("op", ")")
            return ConstF(m)
        if value in ("sym", "ext", "shift"):
            self.expect("op", "(")
            k = self.int_arg()
            self.expect("op", ",")
            inner = self.expression()
            self.expect("op", ")")
            if value == "sym":
                return SymF(k, inner)
            if value == "ext":
                return ExtF(k, inner)
            return ShiftF(k, inner)
        if value in ("tensor", "sum"):
            self.expect("op", "(")
            parts = [self.expression()]
            while True:
                k, v, _ = self.peek()
                if k == "op" and v == ",":
                    self.next()
                    parts.append(self.expression())
                else:
                    break
            self.expect("op", ")")
            return TensorF(tuple(parts)) if value == "tensor" else SumF(tuple(parts))
        if value == "quot":
            self.expect("op", "(")
            inner = self.expression()
            self.expect("op", ",")
            idx = self.int_arg()
            self.expect("op", ")")
            return QuotF(inner, idx)
        raise ParseError(f"unknown constructor {value!r}", pos, self.text)


def parse_functor(text: str) -> FunctorExpr:
    return _FunctorParser(text).parse()


def format_functor(expr: FunctorExpr) -> str:
    if isinstance(expr, ConstF):
        return f"const({expr.size})"
    if isinstance(expr, IdF):
        return "id"
    if isinstance(expr, TenSymF):
        return "tsym"
    if isinstance(expr, TenAltF):
        return "talt"
    if isinstance(expr, SumF):
        return "sum(" + ",".join(format_functor(p) for p in expr.parts) + ")"
    if isinstance(expr, TensorF):
        return "tensor(" + ",".join(format_functor(f) for f in expr.factors) + ")"
    if isinstance(expr, SymF):
        return f"sym({expr.power},{format_functor(expr.inner)})"
    if isinstance(expr, ExtF):
        return f"ext({expr.power},{format_functor(expr.inner)})"
    if isinstance(expr, ShiftF):
        return f"shift({expr.by},{format_functor(expr.inner)})"
    if isinstance(expr, QuotF):
        return f"quot({format_functor(expr.inner)},{expr.drop_index})"
    raise AlgebraError(f"unknown expression {expr!r}")
