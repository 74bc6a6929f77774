"""One inner step of the elimination pipeline on a concrete presentation.

Given a functor with a designated top-degree summand, a witness polynomial f
on the value at a base space, and a direction in the designated summand, the
pipeline produces: the minimal-degree report for the supplied generators,
the directional derivative h with its level, the per-degree coefficient
matrices of the parametrised projection, the affine-additive coefficient
extracted from the pullback of f, and finally a Cramer-rule certificate that
expresses each moving top-summand coordinate over the retained coordinates
with denominators that are powers of h.

The worked rank-one tensor example ships end-to-end with seeded sample
validation and byte-stable reports.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AlgebraError,
    BadDirectionChoiceError,
    BudgetExceededError,
    CertificateNotFoundError,
    CharacteristicError,
    InternalCheckError,
    PresentationError,
)
from .fields import FieldDescriptor, Scalar
from .functors import (
    FunctorExpr,
    IdF,
    SumF,
    TenAltF,
    TenSymF,
    TensorF,
    basis_labels,
    decompose,
    induced_map,
    label_vdeg,
    shift_label,
)
from .groebner import (
    Budget,
    divide_exact,
    membership_by_division,
    normal_form,
)
from .hasse import (
    DirectionSubspace,
    directional_data,
    fresh_name,
    joint_additivity_holds,
    joint_scaling_holds,
    specialise_joint,
)
from .matrices import (
    LinearMapMatrix,
    base_projection,
    graft_columns,
    matrix_rank,
    poly_matrix_det,
    scalar_entry_ring,
    space_matrix,
)
from .rings import GradedPoly, GradedRing, RingVariable, Vector

# ---------------------------------------------------------------------------
# coordinate models
# ---------------------------------------------------------------------------


def _summand_prefix(expr: FunctorExpr) -> str | None:
    if isinstance(expr, TenSymF):
        return "y"
    if isinstance(expr, TenAltF):
        return "z"
    if isinstance(expr, TensorF) and all(isinstance(f, IdF) for f in expr.factors):
        return "x"
    return None


def _leaf_indices(label) -> tuple[int, ...] | None:
    tag = label[0]
    if tag == "v":
        return (label[1],)
    if tag in ("y", "z"):
        return (label[1], label[2])
    if tag == "t":
        out = []
        for sub in label[1]:
            part = _leaf_indices(sub)
            if part is None:
                return None
            out.extend(part)
        return tuple(out)
    return None


class CoordinateModel:
    """Coordinate ring of the value of a functor at a fixed dimension.

    Variables are grouped by normalised summand; each carries the summand
    label as its part and the summand degree as its weight.  Names follow
    the running conventions: x_i_j for tensor coordinates, y_i_j (i <= j)
    and z_i_j (i < j) for the symmetric/alternating split, and a generic
    label-positional scheme otherwise.  Indices in names are 1-based.
    """

    def __init__(self, functor: FunctorExpr, field: FieldDescriptor, dimension: int):
        self.functor = functor
        self.field = field
        self.dimension = dimension
        self.decomposition = decompose(functor)
        summands = self.decomposition.summands
        if not summands:
            raise PresentationError("the zero functor has no coordinates")
        self.normalized = SumF(tuple(s.expr for s in summands))
        prefixes = [_summand_prefix(s.expr) for s in summands]
        for i, p in enumerate(prefixes):
            if p is not None and prefixes.count(p) > 1:
                prefixes[i] = None
        variables = []
        full_labels = []
        names_by_label = {}
        for idx, s in enumerate(summands):
            labels = basis_labels(s.expr, dimension)
            for pos, sub in enumerate(labels):
                leafs = _leaf_indices(sub) if prefixes[idx] else None
                if prefixes[idx] and leafs is not None:
                    name = prefixes[idx] + "".join(f"_{i + 1}" for i in leafs)
                else:
                    name = f"{s.label}_{pos + 1}"
                variables.append(RingVariable(name, s.label, s.degree))
                full = ("s", idx, sub)
                full_labels.append(full)
                names_by_label[full] = name
        self.ring = GradedRing(field, variables)
        self.full_labels = tuple(full_labels)
        self.name_of = names_by_label
        self.label_of = {name: lab for lab, name in names_by_label.items()}

    def summand_vars(self, label: str) -> tuple[str, ...]:
        return self.ring.vars_of_part(label)

    def moving_vars(self, label: str, split: int) -> tuple[str, ...]:
        """Variables of the summand whose basis elements are fully supported
        beyond the split point (top-degree block of the shifted picture)."""
        s = self.decomposition.summand(label)
        out = []
        for full in self.full_labels:
            if full[1] != self.decomposition.index_of(label):
                continue
            if label_vdeg(full[2], split) == s.degree:
                out.append(self.name_of[full])
        return tuple(out)


def coordinate_model(functor: FunctorExpr, field: FieldDescriptor, dimension: int) -> CoordinateModel:
    return CoordinateModel(functor, field, dimension)


# ---------------------------------------------------------------------------
# variety presentations
# ---------------------------------------------------------------------------


@dataclass
class VarietyPresentation:
    """Equivariant variety presented by generators at one base dimension."""

    functor: FunctorExpr
    field: FieldDescriptor
    base_dim: int
    model: CoordinateModel
    generators: tuple[GradedPoly, ...]
    q_generators: tuple[GradedPoly, ...]
    designated_r: str

    @staticmethod
    def make(functor, field, base_dim, generators, q_generators, designated_r) -> "VarietyPresentation":
        model = coordinate_model(functor, field, base_dim)
        generators = tuple(generators)
        q_generators = tuple(q_generators)
        for g in generators + q_generators:
            if g.ring != model.ring:
                raise PresentationError("generator lives in a foreign ring")
            if not g.is_weight_homogeneous():
                raise PresentationError(f"generator {g} is not weight-homogeneous")
        dec = model.decomposition
        r = dec.summand(designated_r)
        top = max(s.degree for s in dec.summands)
        if r.degree != top:
            raise PresentationError(
                f"designated summand {designated_r!r} has degree {r.degree}, top degree is {top}"
            )
        return VarietyPresentation(
            functor, field, base_dim, model, generators, q_generators, designated_r
        )

    @property
    def top_degree(self) -> int:
        return self.model.decomposition.summand(self.designated_r).degree

    def r_vars(self) -> tuple[str, ...]:
        return self.model.summand_vars(self.designated_r)


@dataclass(frozen=True)
class DeltaReport:
    """Minimal weighted degree of a supplied generator that survives
    reduction modulo the base-projection generators.

    Computed over the supplied generating set, not the full ideal.  status is
    'finite', 'infinite' (everything reduces to zero) or 'inconclusive'
    (reduction budget exhausted).
    """

    status: str
    delta: int | None
    witness: GradedPoly | None


def delta_degree(X: VarietyPresentation, budget_steps: int | None = None) -> DeltaReport:
    best = None
    witness = None
    try:
        for g in X.generators:
            if not g:
                continue
            remainder = normal_form(g, X.q_generators, Budget(budget_steps) if budget_steps else None)
            if remainder.is_zero():
                continue
            d = g.weighted_degree()
            if best is None or d < best:
                best = d
                witness = g
    except BudgetExceededError:
        return DeltaReport("inconclusive", None, None)
    if best is None:
        return DeltaReport("infinite", None, None)
    return DeltaReport("finite", best, witness)


# ---------------------------------------------------------------------------
# directional derivative step
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DerivativeStep:
    level: int
    derivative: GradedPoly
    data: object  # DirectionalData of the witness along the designated summand


def derivative_step(f: GradedPoly, X: VarietyPresentation, r0: Vector) -> DerivativeStep:
    """Directional derivative of f along r0 inside the designated summand,
    with its level; refuses directions whose derivative dies modulo the
    base-projection generators."""
    if f.ring != X.model.ring:
        raise PresentationError("witness polynomial lives in a foreign ring")
    W = DirectionSubspace(X.model.ring, X.r_vars())
    data = directional_data(f, W)
    if not data.dependent:
        raise PresentationError(
            "the witness does not involve the designated top-degree coordinates"
        )
    h = specialise_joint(data, r0, W)
    if h.is_zero():
        raise BadDirectionChoiceError(
            "directional derivative vanishes for this direction; pick another one"
        )
    if X.q_generators:
        if normal_form(h, X.q_generators).is_zero():
            raise BadDirectionChoiceError(
                "directional derivative vanishes modulo the base projection; pick another direction"
            )
    if f.is_weight_homogeneous():
        expected = f.weighted_degree() - X.top_degree * X.field.char_exponent ** data.level
        if h.weighted_degree() != expected:
            raise InternalCheckError(
                f"derivative degree {h.weighted_degree()} differs from expected {expected}"
            )
    return DerivativeStep(data.level, h, data)


def usable_directions(f: GradedPoly, X: VarietyPresentation) -> list[tuple[str, bool]]:
    """Scan the coordinate directions of the designated summand and report
    which give a derivative that survives modulo the base projection."""
    W = DirectionSubspace(X.model.ring, X.r_vars())
    data = directional_data(f, W)
    out = []
    for name in X.r_vars():
        if not data.dependent:
            out.append((name, False))
            continue
        coords = [1 if v == name else 0 for v in W.span_vars]
        h = specialise_joint(data, W.direction(coords), W)
        ok = bool(h)
        if ok and X.q_generators:
            ok = not normal_form(h, X.q_generators).is_zero()
        out.append((name, ok))
    return out


# ---------------------------------------------------------------------------
# parametrised projection and its coefficient matrices
# ---------------------------------------------------------------------------


@dataclass
class ProjectionCoefficients:
    """Per-degree coefficient matrices of the parametrised projection.

    For each homogeneous degree e the induced map of [1_U | t*phi] is a
    polynomial of degree at most e in t; its coefficient matrices satisfy:
    the t^0 matrix is induced by the plain projection onto the base block,
    the t^e matrix is induced by [0 | phi], and the t^i matrix kills every
    basis vector whose moving degree differs from i.
    """

    u: int
    n: int
    phi: LinearMapMatrix
    by_degree: dict[int, tuple[LinearMapMatrix, ...]]


def _t_ring(fld: FieldDescriptor) -> GradedRing:
    return GradedRing(fld, (RingVariable("t", "aux", 0),))


def _parametrised_map(model_u: CoordinateModel, phi: LinearMapMatrix) -> tuple[LinearMapMatrix, GradedRing]:
    """Induced matrix of [1_U | t*phi] over the one-variable ring in t."""
    fld = model_u.field
    ring_t = _t_ring(fld)
    t = ring_t.var("t")
    tail = LinearMapMatrix(
        phi.row_labels,
        phi.col_labels,
        ring_t,
        [[e.convert(ring_t) * t for e in row] for row in phi.rows],
    )
    psi = graft_columns(model_u.dimension, tail)
    return induced_map(model_u.normalized, psi), ring_t


def projection_coefficients(
    model_u: CoordinateModel, n: int, phi: LinearMapMatrix
) -> ProjectionCoefficients:
    u = model_u.dimension
    fld = model_u.field
    if (len(phi.row_labels), len(phi.col_labels)) != (u, n):
        raise PresentationError("projection matrix has the wrong shape")
    if matrix_rank([[e.constant_value() for e in row] for row in phi.rows], fld) != u:
        raise PresentationError("projection matrix is not surjective")
    big = coordinate_model(model_u.functor, fld, u + n)
    full, _ = _parametrised_map(model_u, phi)
    scalar_ring = scalar_entry_ring(fld)
    proj = induced_map(model_u.normalized, base_projection(fld, u, n))
    zero_block = [[fld.zero()] * u for _ in range(u)]
    zero_phi = space_matrix(fld, [list(z) + [e.constant_value() for e in row] for z, row in zip(zero_block, phi.rows)])
    top = induced_map(model_u.normalized, zero_phi)
    dec = model_u.decomposition
    by_degree = {}
    for e, summands in dec.parts.items():
        idx_set = {dec.index_of(s.label) for s in summands}
        rows_sel = [i for i, lab in enumerate(full.row_labels) if lab[1] in idx_set]
        cols_sel = [j for j, lab in enumerate(full.col_labels) if lab[1] in idx_set]
        row_labels = tuple(full.row_labels[i] for i in rows_sel)
        col_labels = tuple(full.col_labels[j] for j in cols_sel)
        coeffs = []
        for power in range(e + 1):
            rows = [
                [full.rows[i][j].coeff_of_power("t", power, scalar_ring) for j in cols_sel]
                for i in rows_sel
            ]
            coeffs.append(LinearMapMatrix(row_labels, col_labels, scalar_ring, rows))
        # invariant: the t-degree never exceeds the homogeneous degree
        for i in rows_sel:
            for j in cols_sel:
                if full.rows[i][j].max_power("t") > e:
                    raise InternalCheckError("parameter degree exceeds homogeneous degree")
        # invariant: t^0 block is the base projection, t^e block is [0|phi]
        for mat, reference in ((coeffs[0], proj), (coeffs[e], top)):
            for rl in row_labels:
                for cl in col_labels:
                    if mat.entry_by_label(rl, cl) != reference.entry_by_label(rl, cl):
                        raise InternalCheckError("coefficient matrix mismatch at the ends")
        # invariant: t^i kills basis vectors of moving degree != i
        for power, mat in enumerate(coeffs):
            for j, cl in enumerate(col_labels):
                if label_vdeg(cl[2], u) != power:
                    if any(row[j] for row in mat.rows):
                        raise InternalCheckError("coefficient matrix misses the vanishing pattern")
        by_degree[e] = tuple(coeffs)
    return ProjectionCoefficients(u, n, phi, by_degree)


# ---------------------------------------------------------------------------
# affine-additive coefficient extraction
# ---------------------------------------------------------------------------


@dataclass
class AffineAdditiveElement:
    """Element k of the pullback ideal that is affine-additive in the moving
    top-summand coordinates: k(q + s*r) = k(q) + s^(p^e) * (additive part at r)."""

    poly: GradedPoly
    level: int
    additive_part: dict[str, GradedPoly]
    constant_part: GradedPoly
    eliminated: tuple[str, ...]
    pullback: GradedPoly  # full parametrised pullback of the witness
    tag: str = ""


def extract_additive_element(
    f: GradedPoly,
    model_u: CoordinateModel,
    model_big: CoordinateModel,
    phi: LinearMapMatrix,
    level: int,
    r_label: str,
) -> AffineAdditiveElement:
    """Coefficient of t^(d*p^level) in the pullback of f along [1_U | t*phi],
    verified to be affine-additive in the moving coordinates of the
    designated summand, with the derivative-compatibility identity checked
    as a formal polynomial identity."""
    fld = model_u.field
    u = model_u.dimension
    if f.ring != model_u.ring:
        raise PresentationError("witness polynomial lives in a foreign ring")
    d = model_u.normalized.degree()
    q_power = fld.char_exponent ** level

    full, _ = _parametrised_map(model_u, phi)
    t_name = fresh_name("t", set(model_big.ring.names))
    ext = model_big.ring.extended((RingVariable(t_name, "aux", 0),))
    # pull back every base-side coordinate through the parametrised matrix
    mapping = {}
    for i, row_label in enumerate(full.row_labels):
        acc = ext.zero()
        for j, col_label in enumerate(full.col_labels):
            entry = full.rows[i][j]
            if not entry:
                continue
            renamed = GradedPoly(
                ext,
                {
                    _embed_t_exps(ext, t_name, exps): c
                    for exps, c in entry.terms.items()
                },
                _canonical=True,
            )
            acc = acc + renamed * ext.var(model_big.name_of[col_label])
        mapping[model_u.name_of[row_label]] = acc
    f_sub = f.substitute(mapping)
    k = f_sub.coeff_of_power(t_name, d * q_power, model_big.ring)
    pullback = f_sub

    # structural affine-additive split: k = k0 + sum coeff_v * v^(p^level)
    # with k0 and every coeff_v free of the moving coordinates.  This form is
    # equivalent to affine additivity at the stated level because raising to
    # a power of the characteristic exponent is additive.
    moving = model_big.moving_vars(r_label, u)
    moving_pos = {name: model_big.ring.position(name) for name in moving}
    additive_terms: dict[str, dict] = {name: {} for name in moving}
    const_terms = {}
    for exps, c in k.terms.items():
        carriers = [name for name, pos in moving_pos.items() if exps[pos]]
        if not carriers:
            const_terms[exps] = c
            continue
        if len(carriers) != 1 or exps[moving_pos[carriers[0]]] != q_power:
            raise InternalCheckError(
                "element is not affine-additive in the moving coordinates"
            )
        name = carriers[0]
        stripped = list(exps)
        stripped[moving_pos[name]] = 0
        additive_terms[name][tuple(stripped)] = c
    constant_part = GradedPoly(model_big.ring, const_terms, _canonical=True)
    additive_part: dict[str, GradedPoly] = {}
    for name in moving:
        part = GradedPoly(model_big.ring, additive_terms[name], _canonical=True)
        if part:
            additive_part[name] = part
    rebuilt = constant_part
    for name, coeff in additive_part.items():
        rebuilt = rebuilt + coeff * model_big.ring.var(name) ** q_power
    if rebuilt != k:
        raise InternalCheckError("affine-additive reconstruction failed")
    _check_derivative_formula(
        f, model_u, model_big, phi, additive_part, moving, r_label, level
    )
    return AffineAdditiveElement(
        poly=k,
        level=level,
        additive_part=additive_part,
        constant_part=constant_part,
        eliminated=tuple(moving),
        pullback=pullback,
    )


def _embed_t_exps(ext: GradedRing, t_name: str, exps):
    pos = ext.position(t_name)
    out = [0] * len(ext.names)
    out[pos] = exps[0]
    return tuple(out)


def _check_derivative_formula(
    f: GradedPoly,
    model_u: CoordinateModel,
    model_big: CoordinateModel,
    phi: LinearMapMatrix,
    additive_part: dict,
    moving,
    r_label: str,
    level: int,
):
    """(additive part of k at a symbolic direction r) = (derivative of f
    along R(phi)r) pulled back through the base projection, as one formal
    identity in the original variables plus one copy per moving coordinate."""
    fld = model_u.field
    u = model_u.dimension
    n = model_big.dimension - u
    q_power = fld.char_exponent ** level
    big_ring = model_big.ring
    copies = []
    taken = set(big_ring.names)
    for name in moving:
        copy = fresh_name(name + "_w", taken)
        taken.add(copy)
        copies.append((name, copy))
    copy_of_big = dict(copies)
    joint_ring = big_ring.extended(
        RingVariable(copy, "aux", big_ring.variables[big_ring.position(orig)].weight)
        for orig, copy in copies
    )
    lhs = joint_ring.zero()
    for name, coeff in additive_part.items():
        lhs = lhs + coeff.convert(joint_ring) * joint_ring.var(copy_of_big[name]) ** q_power

    W_u = DirectionSubspace(model_u.ring, model_u.summand_vars(r_label))
    dd_f = directional_data(f, W_u)
    if not dd_f.dependent:
        if lhs:
            raise InternalCheckError(
                "element depends on the moving coordinates but the witness does not"
            )
        return
    if dd_f.level != level:
        raise InternalCheckError(
            f"witness direction level {dd_f.level} differs from the element level {level}"
        )
    # base projection pullback of the base-side coordinates
    proj = induced_map(model_u.normalized, base_projection(fld, u, n))
    mapping = {}
    for i, row_label in enumerate(proj.row_labels):
        acc = joint_ring.zero()
        for j, col_label in enumerate(proj.col_labels):
            entry = proj.rows[i][j]
            if entry:
                acc = acc + joint_ring.var(model_big.name_of[col_label]) * entry.constant_value()
        mapping[model_u.name_of[row_label]] = acc
    # substitute the symbolic direction through the summand map of phi
    r_idx = model_u.decomposition.index_of(r_label)
    r_expr = model_u.decomposition.summand(r_label).expr
    r_map = induced_map(r_expr, phi)
    cols_at_n = basis_labels(r_expr, n)
    for orig, copy in dd_f.copies:
        lab_u = model_u.label_of[orig][2]
        acc = joint_ring.zero()
        for lab_n in cols_at_n:
            entry = r_map.entry_by_label(lab_u, lab_n)
            if not entry:
                continue
            big_name = model_big.name_of[("s", r_idx, shift_label(lab_n, u))]
            acc = acc + joint_ring.var(copy_of_big[big_name]) * entry.constant_value()
        mapping[copy] = acc
    rhs = dd_f.joint.substitute(mapping)
    if rhs != lhs:
        raise InternalCheckError("derivative-compatibility identity failed")


# ---------------------------------------------------------------------------
# elimination certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateEntry:
    variable: str
    numerator: GradedPoly
    h_power: int


@dataclass
class EliminationCertificate:
    """Per moving coordinate x, an expression x^(p^e) + numerator/h^power
    lying in the module spanned by the supplied affine-additive elements."""

    base_vars: tuple[str, ...]
    unit: GradedPoly
    level: int
    entries: tuple[CertificateEntry, ...]
    minor_rows: tuple[int, ...]
    minor_det: GradedPoly

    def cleared_elements(self) -> list[GradedPoly]:
        ring = self.unit.ring
        q = ring.field.char_exponent ** self.level
        out = []
        for e in self.entries:
            out.append(self.unit ** e.h_power * ring.var(e.variable) ** q + e.numerator)
        return out


def eliminate(
    elements,
    h: GradedPoly,
    eliminated,
    max_minor_candidates: int = 64,
) -> EliminationCertificate:
    """Cramer-rule elimination of the moving coordinates.

    Searches row subsets for a minor equal to a nonzero scalar times a power
    of h; on success solves for each moving coordinate, cancelling common
    h-powers between numerator and denominator.  Raises
    CertificateNotFoundError when no unit minor shows up within the budget.
    """
    elements = list(elements)
    eliminated = list(eliminated)
    if not elements or not eliminated:
        raise PresentationError("elimination needs elements and coordinates")
    ring = elements[0].poly.ring
    level = elements[0].level
    for el in elements:
        if el.poly.ring != ring or el.level != level:
            raise PresentationError("elements disagree in ring or level")
    if h.ring != ring:
        raise PresentationError("unit polynomial lives in a foreign ring")
    elim_set = set(eliminated)
    if set(h.support_vars()) & elim_set:
        raise PresentationError("unit polynomial must avoid the moving coordinates")
    n_cols = len(eliminated)
    if len(elements) < n_cols:
        raise CertificateNotFoundError(
            f"{len(elements)} elements cannot eliminate {n_cols} coordinates"
        )
    zero = ring.zero()
    matrix = [
        [el.additive_part.get(v, zero) for v in eliminated] for el in elements
    ]
    k0 = [el.constant_part for el in elements]
    chosen = None
    for count, rows_sel in enumerate(itertools.combinations(range(len(elements)), n_cols)):
        if count >= max_minor_candidates:
            break
        det = poly_matrix_det([matrix[i] for i in rows_sel], ring)
        if det.is_zero():
            continue
        num = det
        power = 0
        if not h.is_constant():
            while True:
                q = divide_exact(num, h)
                if q is None:
                    break
                num = q
                power += 1
        if num.is_constant():
            chosen = (rows_sel, det, num.constant_value(), power)
            break
    if chosen is None:
        raise CertificateNotFoundError("no unit minor found within the search budget")
    rows_sel, det, c_scalar, _ = chosen
    inv_c = c_scalar.inverse()
    entries = []
    q_power = ring.field.char_exponent ** level
    for j, var in enumerate(eliminated):
        replaced = []
        for i in rows_sel:
            row = list(matrix[i])
            row[j] = k0[i]
            replaced.append(row)
        numerator = poly_matrix_det(replaced, ring) * inv_c
        power = 0
        scaled_det = det * inv_c  # equals h^power_total
        # express det/c as a pure h power
        rest = scaled_det
        while not rest.is_constant():
            rest = divide_exact(rest, h)
            if rest is None:
                raise InternalCheckError("unit minor lost its h-power structure")
            power += 1
        if rest.constant_value() != ring.field.one():
            raise InternalCheckError("unit minor scalar mismatch")
        # cancel common powers of h
        while power > 0:
            q = divide_exact(numerator, h)
            if q is None:
                break
            numerator = q
            power -= 1
        if set(numerator.support_vars()) & elim_set:
            raise InternalCheckError("certificate numerator touches a moving coordinate")
        entries.append(CertificateEntry(var, numerator, power))
    base_vars = tuple(v for v in ring.names if v not in elim_set)
    return EliminationCertificate(
        base_vars=base_vars,
        unit=h,
        level=level,
        entries=tuple(entries),
        minor_rows=rows_sel,
        minor_det=det,
    )


# ---------------------------------------------------------------------------
# rank-one worked example
# ---------------------------------------------------------------------------


def split_coordinate_form(model: CoordinateModel, a: int, b: int) -> GradedPoly:
    """Tensor coordinate x_ab written in the split y/z coordinates (0-based)."""
    ring = model.ring
    if a == b:
        return ring.var(f"y_{a + 1}_{b + 1}")
    if a < b:
        return ring.var(f"y_{a + 1}_{b + 1}") + ring.var(f"z_{a + 1}_{b + 1}")
    return ring.var(f"y_{b + 1}_{a + 1}") - ring.var(f"z_{b + 1}_{a + 1}")


def rank_one_minors_split(model: CoordinateModel) -> list[GradedPoly]:
    """All 2x2 minors of the generic tensor, in split coordinates."""
    m = model.dimension
    out = []
    for i, j in itertools.combinations(range(m), 2):
        for k, l in itertools.combinations(range(m), 2):
            out.append(
                split_coordinate_form(model, i, k) * split_coordinate_form(model, j, l)
                - split_coordinate_form(model, i, l) * split_coordinate_form(model, j, k)
            )
    return out


def rank_one_minors_plain(model: CoordinateModel) -> list[GradedPoly]:
    m = model.dimension
    ring = model.ring
    out = []
    for i, j in itertools.combinations(range(m), 2):
        for k, l in itertools.combinations(range(m), 2):
            out.append(
                ring.var(f"x_{i + 1}_{k + 1}") * ring.var(f"x_{j + 1}_{l + 1}")
                - ring.var(f"x_{i + 1}_{l + 1}") * ring.var(f"x_{j + 1}_{k + 1}")
            )
    return out


def split_to_plain_map(split_model: CoordinateModel, plain_model: CoordinateModel) -> dict:
    """Substitution expressing split coordinates in tensor coordinates."""
    ring = plain_model.ring
    fld = ring.field
    if fld.characteristic == 2:
        raise CharacteristicError("split coordinates are unavailable in characteristic 2")
    half = fld.scalar(Fraction(1, 2)) if fld.characteristic == 0 else fld.scalar(2).inverse()
    mapping = {}
    m = split_model.dimension
    for a in range(m):
        for b in range(a, m):
            if a == b:
                mapping[f"y_{a + 1}_{b + 1}"] = ring.var(f"x_{a + 1}_{a + 1}")
            else:
                mapping[f"y_{a + 1}_{b + 1}"] = (
                    ring.var(f"x_{a + 1}_{b + 1}") + ring.var(f"x_{b + 1}_{a + 1}")
                ) * half
                mapping[f"z_{a + 1}_{b + 1}"] = (
                    ring.var(f"x_{a + 1}_{b + 1}") - ring.var(f"x_{b + 1}_{a + 1}")
                ) * half
    return mapping


def _sample_scalar(rng: random.Random, fld: FieldDescriptor) -> Scalar:
    if fld.characteristic == 0:
        return fld.scalar(rng.randint(-10, 10))
    return fld.scalar(rng.randrange(fld.characteristic))


def sample_rank_one_split(rng: random.Random, model: CoordinateModel, require_unit=None):
    """Split coordinates of a random rank-one tensor v (x) w; when
    require_unit is given, resample until it does not vanish there."""
    fld = model.field
    m = model.dimension
    half = fld.scalar(Fraction(1, 2)) if fld.characteristic == 0 else fld.scalar(2).inverse()
    for _ in range(1000):
        v = [_sample_scalar(rng, fld) for _ in range(m)]
        w = [_sample_scalar(rng, fld) for _ in range(m)]
        point = {}
        for a in range(m):
            for b in range(a, m):
                x_ab = v[a] * w[b]
                x_ba = v[b] * w[a]
                if a == b:
                    point[f"y_{a + 1}_{b + 1}"] = x_ab
                else:
                    point[f"y_{a + 1}_{b + 1}"] = (x_ab + x_ba) * half
                    point[f"z_{a + 1}_{b + 1}"] = (x_ab - x_ba) * half
        if require_unit is None or require_unit.evaluate(point):
            return point
    raise AlgebraError("failed to sample a point off the unit locus")


@dataclass
class Check:
    name: str
    status: str  # pass | fail | inconclusive | skipped
    witness: str = ""


@dataclass
class RankOneReport:
    field: FieldDescriptor
    n: int
    seed: int
    u: int
    f: GradedPoly
    r0: Vector
    delta: DeltaReport
    level: int
    h: GradedPoly
    elements: list  # (i, j, AffineAdditiveElement) with 1-based pair indices
    certificate: EliminationCertificate | None
    checks: list

    def all_passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "field": str(self.field),
            "n": self.n,
            "seed": self.seed,
            "u": self.u,
            "f": self.f.to_text(),
            "r0": {b: str(c) for b, c in zip(self.r0.basis, self.r0.coords)},
            "delta": {
                "status": self.delta.status,
                "value": self.delta.delta,
                "witness": self.delta.witness.to_text() if self.delta.witness else None,
            },
            "e0": self.level,
            "h": self.h.to_text(),
            "k": [
                {"i": i, "j": j, "value": el.poly.to_text()} for i, j, el in self.elements
            ],
            "certificate": [
                {
                    "variable": e.variable,
                    "numerator": e.numerator.to_text(),
                    "h_power": e.h_power,
                }
                for e in (self.certificate.entries if self.certificate else ())
            ],
            "checks": [
                {"name": c.name, "status": c.status, "witness": c.witness}
                for c in self.checks
            ],
            "all_passed": self.all_passed(),
        }

    def to_text(self) -> str:
        lines = []
        lines.append(f"field: {self.field}")
        lines.append(f"n: {self.n}")
        lines.append(f"seed: {self.seed}")
        lines.append(f"u: {self.u}")
        lines.append(f"f: {self.f.to_text()}")
        r0_text = ", ".join(f"{b}={c}" for b, c in zip(self.r0.basis, self.r0.coords))
        lines.append(f"r0: {r0_text}")
        delta_value = self.delta.delta if self.delta.status == "finite" else self.delta.status
        lines.append(f"delta: {delta_value}")
        if self.delta.witness is not None:
            lines.append(f"delta witness: {self.delta.witness.to_text()}")
        lines.append(f"e0: {self.level}")
        lines.append(f"h: {self.h.to_text()}")
        for i, j, el in self.elements:
            lines.append(f"k[{i}][{j}]: {el.poly.to_text()}")
        if self.certificate is not None:
            for e in self.certificate.entries:
                lines.append(
                    f"certificate[{e.variable}]: {e.variable}^{self.field.char_exponent ** self.level}"
                    f" + ({e.numerator.to_text()})/h^{e.h_power}"
                )
        lines.append("checks:")
        for c in self.checks:
            suffix = f"  [{c.witness}]" if c.witness else ""
            lines.append(f"  {c.status.upper():<6} {c.name}{suffix}")
        lines.append(f"all passed: {str(self.all_passed()).lower()}")
        return "\n".join(lines) + "\n"


def run_rank_one_example(
    n: int,
    fld: FieldDescriptor,
    seed: int = 0,
    sample_count: int = 100,
    membership_budget: int = 200_000,
) -> RankOneReport:
    """Full pipeline on the variety of rank-one tensors with the
    symmetric/alternating splitting, at base dimension 2."""
    if fld.characteristic == 2:
        raise CharacteristicError("the rank-one example needs characteristic different from 2")
    if n < 2:
        raise AlgebraError("the rank-one example needs n >= 2")
    u = 2
    rng = random.Random(seed)
    checks: list[Check] = []
    functor = SumF((TenSymF(), TenAltF()))
    model_u = coordinate_model(functor, fld, u)
    model_big = coordinate_model(functor, fld, u + n)
    r_label = next(
        s.label for s in model_u.decomposition.summands if isinstance(s.expr, TenAltF)
    )

    ring_u = model_u.ring
    f = (
        ring_u.var("y_1_1") * ring_u.var("y_2_2")
        - ring_u.var("y_1_2") ** 2
        + ring_u.var("z_1_2") ** 2
    )
    X = VarietyPresentation.make(functor, fld, u, [f], [], r_label)

    delta = delta_degree(X)
    checks.append(
        Check(
            "delta-degree",
            "pass" if (delta.status == "finite" and delta.delta == 4) else "fail",
            f"delta={delta.delta}",
        )
    )

    scan = usable_directions(f, X)
    checks.append(
        Check(
            "direction-scan",
            "pass" if any(ok for _, ok in scan) else "fail",
            "; ".join(f"{name}:{'ok' if ok else 'no'}" for name, ok in scan),
        )
    )

    r0 = Vector("r", ("z_1_2",), (fld.one(),))
    step = derivative_step(f, X, r0)
    h = step.derivative
    expected_h = ring_u.var("z_1_2") * 2
    checks.append(Check("derivative-level", "pass" if step.level == 0 else "fail", f"e0={step.level}"))
    checks.append(
        Check("derivative-value", "pass" if h == expected_h else "fail", h.to_text())
    )
    deg_ok = f.weighted_degree() == 4 and h.weighted_degree() == 2
    checks.append(
        Check(
            "degree-ledger",
            "pass" if deg_ok else "fail",
            f"deg f={f.weighted_degree()}, deg h={h.weighted_degree()}",
        )
    )
    checks.append(
        Check(
            "joint-additivity f",
            "pass" if joint_additivity_holds(step.data) else "fail",
        )
    )
    checks.append(
        Check(
            "joint-scaling f",
            "pass" if joint_scaling_holds(step.data) else "fail",
        )
    )

    # the witness vanishes on sampled rank-one tensors at the base dimension
    spot_ok = True
    for _ in range(20):
        point = sample_rank_one_split(rng, model_u)
        if f.evaluate(point):
            spot_ok = False
            break
    checks.append(Check("base-locus-spot-check", "pass" if spot_ok else "fail"))

    scalar_ring = scalar_entry_ring(fld)
    elements = []
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for (i, j) in pairs:
        rows = [[0] * n for _ in range(u)]
        rows[0][i - 1] = 1
        rows[1][j - 1] = 1
        phi = space_matrix(fld, rows, scalar_ring)
        tag = f"{i},{j}"
        projection_coefficients(model_u, n, phi)
        checks.append(Check(f"projection-identities {tag}", "pass"))
        el = extract_additive_element(f, model_u, model_big, phi, step.level, r_label)
        el.tag = tag
        elements.append((i, j, el))
        checks.append(Check(f"affine-additive-form {tag}", "pass"))
        checks.append(Check(f"derivative-formula {tag}", "pass"))
        if el.additive_part:
            W_big = DirectionSubspace(model_big.ring, el.eliminated)
            dd_k = directional_data(el.poly, W_big)
            add_ok = joint_additivity_holds(dd_k) and joint_scaling_holds(dd_k)
            checks.append(Check(f"joint-laws k {tag}", "pass" if add_ok else "fail"))

    # the pullback of f vanishes identically in t on sampled points
    pull_ok = True
    for _ in range(sample_count):
        point = sample_rank_one_split(rng, model_big)
        for _, _, el in elements:
            t_var = next(name for name in el.pullback.ring.names if name not in point)
            value_poly = el.pullback.substitute(
                {
                    name: el.pullback.ring.const(point[name])
                    if name != t_var
                    else el.pullback.ring.var(t_var)
                    for name in el.pullback.ring.names
                }
            )
            if not value_poly.is_zero():
                pull_ok = False
                break
        if not pull_ok:
            break
    checks.append(Check("pullback-vanishes-on-samples", "pass" if pull_ok else "fail"))

    k_ok = True
    for _ in range(sample_count):
        point = sample_rank_one_split(rng, model_big)
        for _, _, el in elements:
            if el.poly.evaluate(point):
                k_ok = False
                break
        if not k_ok:
            break
    checks.append(Check("coefficient-vanishes-on-samples", "pass" if k_ok else "fail"))

    h_big = h.convert(model_big.ring)
    eliminated = model_big.moving_vars(r_label, u)
    certificate = None
    try:
        certificate = eliminate([el for _, _, el in elements], h_big, eliminated)
        checks.append(
            Check(
                "certificate-found",
                "pass",
                f"{len(certificate.entries)} coordinates, minor rows {list(certificate.minor_rows)}",
            )
        )
        denominators_ok = all(e.h_power == 1 for e in certificate.entries)
        checks.append(
            Check(
                "certificate-denominator",
                "pass" if denominators_ok else "fail",
                "; ".join(f"{e.variable}: h^{e.h_power}" for e in certificate.entries),
            )
        )
    except CertificateNotFoundError as exc:
        checks.append(Check("certificate-found", "fail", str(exc)))

    if certificate is not None:
        plain_model = coordinate_model(TensorF((IdF(), IdF())), fld, u + n)
        to_plain = split_to_plain_map(model_big, plain_model)
        minors = rank_one_minors_plain(plain_model)
        membership = "pass"
        witness = ""
        try:
            budget = Budget(membership_budget)
            for cleared in certificate.cleared_elements():
                plain = cleared.substitute(to_plain)
                if not membership_by_division(plain, minors, budget):
                    remainder = normal_form(plain, minors, budget)
                    if not remainder.is_zero():
                        membership = "fail"
                        witness = remainder.to_text()
                        break
        except BudgetExceededError:
            membership = "inconclusive"
            witness = "reduction budget exhausted"
        checks.append(Check("certificate-membership", membership, witness))

        samples_ok = True
        q_power = fld.char_exponent ** certificate.level
        for _ in range(sample_count):
            point = sample_rank_one_split(rng, model_big, require_unit=h_big)
            h_val = h_big.evaluate(point)
            for e in certificate.entries:
                recovered = -(e.numerator.evaluate(point) / h_val ** e.h_power)
                actual = point[e.variable] ** q_power
                if recovered != actual:
                    samples_ok = False
                    break
            if not samples_ok:
                break
        checks.append(Check("certificate-samples", "pass" if samples_ok else "fail"))

    return RankOneReport(
        field=fld,
        n=n,
        seed=seed,
        u=u,
        f=f,
        r0=r0,
        delta=delta,
        level=step.level,
        h=h,
        elements=elements,
        certificate=certificate,
        checks=checks,
    )


# ---------------------------------------------------------------------------
# generic proof-step run (formal checks only)
# ---------------------------------------------------------------------------


@dataclass
class ProofStepReport:
    field: FieldDescriptor
    u: int
    n: int
    f: GradedPoly
    r0: Vector
    delta: DeltaReport
    level: int
    h: GradedPoly
    elements: list
    certificate: EliminationCertificate | None
    checks: list

    def all_passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "field": str(self.field),
            "u": self.u,
            "n": self.n,
            "f": self.f.to_text(),
            "r0": {b: str(c) for b, c in zip(self.r0.basis, self.r0.coords)},
            "delta": {
                "status": self.delta.status,
                "value": self.delta.delta,
                "witness": self.delta.witness.to_text() if self.delta.witness else None,
            },
            "e0": self.level,
            "h": self.h.to_text(),
            "k": [{"tag": el.tag, "value": el.poly.to_text()} for el in self.elements],
            "certificate": [
                {
                    "variable": e.variable,
                    "numerator": e.numerator.to_text(),
                    "h_power": e.h_power,
                }
                for e in (self.certificate.entries if self.certificate else ())
            ],
            "checks": [
                {"name": c.name, "status": c.status, "witness": c.witness}
                for c in self.checks
            ],
            "all_passed": self.all_passed(),
        }

    def to_text(self) -> str:
        lines = [
            f"field: {self.field}",
            f"u: {self.u}",
            f"n: {self.n}",
            f"f: {self.f.to_text()}",
            "r0: " + ", ".join(f"{b}={c}" for b, c in zip(self.r0.basis, self.r0.coords)),
            f"delta: {self.delta.delta if self.delta.status == 'finite' else self.delta.status}",
            f"e0: {self.level}",
            f"h: {self.h.to_text()}",
        ]
        for el in self.elements:
            lines.append(f"k[{el.tag}]: {el.poly.to_text()}")
        if self.certificate is not None:
            for e in self.certificate.entries:
                lines.append(
                    f"certificate[{e.variable}]: {e.variable}^{self.field.char_exponent ** self.level}"
                    f" + ({e.numerator.to_text()})/h^{e.h_power}"
                )
        lines.append("checks:")
        for c in self.checks:
            suffix = f"  [{c.witness}]" if c.witness else ""
            lines.append(f"  {c.status.upper():<6} {c.name}{suffix}")
        lines.append(f"all passed: {str(self.all_passed()).lower()}")
        return "\n".join(lines) + "\n"


def run_proofstep(
    X: VarietyPresentation,
    n: int,
    r0: Vector,
    phis,
) -> ProofStepReport:
    """Run the pipeline on an arbitrary presentation with the supplied
    projection matrices; performs the formal identity checks but no
    variety-specific sampling."""
    checks: list[Check] = []
    fld = X.field
    u = X.base_dim
    model_u = X.model
    model_big = coordinate_model(X.functor, fld, u + n)
    f = X.generators[0]
    delta = delta_degree(X)
    checks.append(Check("delta-degree", "pass" if delta.status != "inconclusive" else "inconclusive", str(delta.delta)))
    step = derivative_step(f, X, r0)
    checks.append(Check("derivative", "pass", step.derivative.to_text()))
    elements = []
    for idx, phi in enumerate(phis):
        projection_coefficients(model_u, n, phi)
        el = extract_additive_element(f, model_u, model_big, phi, step.level, X.designated_r)
        el.tag = str(idx)
        elements.append(el)
        checks.append(Check(f"affine-additive-form {idx}", "pass"))
    h_big = step.derivative.convert(model_big.ring)
    eliminated = model_big.moving_vars(X.designated_r, u)
    certificate = None
    try:
        certificate = eliminate(elements, h_big, eliminated)
        checks.append(Check("certificate-found", "pass", f"{len(certificate.entries)} coordinates"))
    except CertificateNotFoundError as exc:
        checks.append(Check("certificate-found", "inconclusive", str(exc)))
    return ProofStepReport(
        field=fld,
        u=u,
        n=n,
        f=f,
        r0=r0,
        delta=delta,
        level=step.level,
        h=step.derivative,
        elements=elements,
        certificate=certificate,
        checks=checks,
    )
