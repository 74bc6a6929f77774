import random
from fractions import Fraction

import pytest

from polyfunctor import (
    AlgebraError,
    CharacteristicError,
    ConstF,
    ExtF,
    GradedRing,
    IdF,
    QuotF,
    ShiftF,
    SumF,
    SymF,
    TenAltF,
    TenSymF,
    TensorF,
    compare_order,
    decompose,
    dim,
    dim_polynomial,
    format_functor,
    induced_map,
    normalize,
    parse_functor,
    shift_maps,
    space_matrix,
    split_tensor_square,
)
from polyfunctor.functors import basis_labels, dimension_sequence, label_degree, label_vdeg
from polyfunctor.matrices import identity_matrix

from conftest import F2, F3, Q, random_functor, random_matrix

GOLDEN = (
    SymF(3, IdF()),
    ExtF(2, IdF()),
    TensorF((IdF(), IdF())),
    SumF((SymF(2, IdF()), IdF())),
)


# -- dimensions --------------------------------------------------------------


def test_dim_examples():
    assert dim(SymF(2, IdF()), 3) == 6
    assert dim(ExtF(2, IdF()), 1) == 0
    P = ShiftF(2, TensorF((IdF(), IdF())))
    for n in range(7):
        assert dim(P, n) == (n + 2) ** 2


def test_shift_tensor_square_summand_dims():
    P = ShiftF(2, TensorF((IdF(), IdF())))
    dec = decompose(P)
    for n in range(1, 7):
        by_degree = {e: dec.part_dim(e, n) for e in dec.degrees()}
        assert by_degree[0] == 4
        assert by_degree[1] == 4 * n
        assert by_degree[2] == n * n
    # with the symmetric/alternating relabelling the degree-2 part splits
    S = ShiftF(2, split_tensor_square())
    dec_s = decompose(S)
    for n in range(1, 7):
        dims = sorted(dim(s.expr, n) for s in dec_s.parts[2])
        assert dims == sorted((n * (n + 1) // 2, n * (n - 1) // 2))


def test_dim_consistency_against_decomposition():
    rng = random.Random(21)
    for _ in range(25):
        expr = random_functor(rng)
        dec = decompose(expr)
        for n in range(7):
            assert dim(expr, n) == dec.dim(n)


def test_dim_polynomial_formula():
    coeffs = dim_polynomial(ShiftF(2, TensorF((IdF(), IdF()))))
    assert list(coeffs) == [Fraction(4), Fraction(4), Fraction(1)]


# -- decomposition ------------------------------------------------------------


def test_decompose_shifted_symmetric_cube():
    from math import comb

    for u in (1, 2, 3):
        dec = decompose(ShiftF(u, SymF(3, IdF())))
        for e in range(4):
            part = dec.parts.get(e, ())
            expected = comb(u + (3 - e) - 1, 3 - e)  # dim of the constant factor
            for n in range(1, 5):
                assert sum(dim(s.expr, n) for s in part) == expected * comb(n + e - 1, e)


def test_decompose_split_tensor_square():
    dec = decompose(split_tensor_square())
    assert len(dec.summands) == 2
    kinds = {type(s.expr) for s in dec.summands}
    assert kinds == {TenSymF, TenAltF}
    for s in dec.summands:
        assert s.degree == 2
    for n in range(6):
        assert dec.dim(n) == n * n


def test_decompose_constant():
    dec = decompose(ConstF(5))
    assert len(dec.summands) == 1
    assert dec.summands[0].degree == 0
    assert dim(dec.summands[0].expr, 3) == 5


def test_homogeneity_of_summands():
    # induced map at t * identity scales each part by t^e
    rng = random.Random(22)
    ring_t = GradedRing(Q, [("t", "aux", 0)])
    t = ring_t.var("t")
    for _ in range(12):
        expr = random_functor(rng)
        dec = decompose(expr)
        n = 2
        for s in dec.summands:
            scaled = space_matrix(Q, [[t if i == j else ring_t.zero() for j in range(n)] for i in range(n)], ring_t)
            mat = induced_map(s.expr, scaled)
            expected = identity_matrix(mat.row_labels, ring_t).scale(t ** s.degree)
            assert mat == expected


# -- induced maps ---------------------------------------------------------------


def test_induced_identity_is_identity():
    rng = random.Random(23)
    for _ in range(10):
        expr = random_functor(rng)
        n = 2
        ident = space_matrix(Q, [[1 if i == j else 0 for j in range(n)] for i in range(n)])
        assert induced_map(expr, ident).is_identity()


def test_exterior_square_is_minor_matrix():
    rng = random.Random(24)
    phi_rows = random_matrix(rng, Q, 3, 3)
    phi = space_matrix(Q, phi_rows)
    mat = induced_map(ExtF(2, IdF()), phi)
    assert len(mat.row_labels) == 3
    for (a, row_lab) in enumerate(mat.row_labels):
        for (b, col_lab) in enumerate(mat.col_labels):
            (i, j) = (row_lab[1][0][1], row_lab[1][1][1])
            (k, l) = (col_lab[1][0][1], col_lab[1][1][1])
            minor = phi_rows[i][k] * phi_rows[j][l] - phi_rows[i][l] * phi_rows[j][k]
            assert mat.rows[a][b].constant_value() == minor


def test_functoriality_random_pairs():
    rng = random.Random(25)
    for field in (Q, F3):
        count = 0
        while count < 100:
            expr = random_functor(rng)
            if expr.degree() > 4:
                continue
            count += 1
            n, m, l = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
            if field.characteristic == 2 and _mentions_split(expr):
                continue
            phi = space_matrix(field, random_matrix(rng, field, m, n))
            psi = space_matrix(field, random_matrix(rng, field, l, m))
            lhs = induced_map(expr, psi.compose(phi))
            rhs = induced_map(expr, psi).compose(induced_map(expr, phi))
            assert lhs == rhs


def _mentions_split(expr):
    if isinstance(expr, (TenSymF, TenAltF)):
        return True
    for attr in ("parts", "factors"):
        if hasattr(expr, attr):
            return any(_mentions_split(c) for c in getattr(expr, attr))
    if hasattr(expr, "inner"):
        return _mentions_split(expr.inner)
    return False


def test_degree_bound_on_symbolic_entries():
    # entries of the induced matrix have degree at most deg(P) in the
    # entries of phi, with equality on the top part
    ring = GradedRing(Q, [(f"a_{i}_{j}", "aux", 1) for i in range(2) for j in range(2)])
    phi = space_matrix(
        Q,
        [[ring.var(f"a_{i}_{j}") for j in range(2)] for i in range(2)],
        ring,
    )
    for expr in GOLDEN:
        mat = induced_map(expr, phi)
        d = expr.degree()
        degrees = [e.total_degree() for row in mat.rows for e in row if e]
        assert max(degrees) == d
        assert all(deg <= d for deg in degrees)


def test_split_tensor_refused_in_characteristic_two():
    phi = space_matrix(F2, [[1, 0], [0, 1]])
    with pytest.raises(CharacteristicError):
        induced_map(TenSymF(), phi)


def test_quotient_drops_block():
    expr = QuotF(ShiftF(2, split_tensor_square()), 5)
    phi = space_matrix(Q, [[1, 2], [3, 4]])
    mat = induced_map(expr, phi)
    labels = set(mat.row_labels)
    assert all(lab[1] != 5 for lab in labels)
    # dimensions drop by the alternating part
    assert dim(expr, 3) == dim(ShiftF(2, split_tensor_square()), 3) - dim(TenAltF(), 3)


def test_quotient_index_out_of_range():
    with pytest.raises(AlgebraError):
        QuotF(TensorF((IdF(), IdF())), 3)


# -- shift maps -------------------------------------------------------------------


def test_shift_maps_golden_suite():
    for P in GOLDEN:
        for u in (1, 2):
            for n in range(1, 6):
                result = shift_maps(P, Q, u, n)
                assert result.composite_is_identity
                assert result.top_iso_check
                d = P.degree()
                assert result.top_dim_base == decompose(P).part_dim(d, n)
                assert result.top_dim_shift == result.top_dim_base


def test_shift_maps_symmetric_cube_dims():
    result = shift_maps(SymF(3, IdF()), Q, 2, 3)
    assert result.top_iso_check
    assert result.top_dim_shift == 10  # binomial(5, 3)


def test_shift_maps_constant():
    result = shift_maps(ConstF(4), Q, 2, 3)
    assert result.alpha.is_identity()
    assert result.beta.is_identity()


def test_shift_tensor_square_degree_two_part():
    P = TensorF((IdF(), IdF()))
    for n in range(1, 5):
        dec = decompose(ShiftF(2, P))
        assert dec.part_dim(2, n) == n * n == decompose(P).part_dim(2, n)


# -- the dimension-sequence order ---------------------------------------------------


def test_compare_order_examples():
    Qp = QuotF(ShiftF(2, split_tensor_square()), 5)
    P = TensorF((IdF(), IdF()))
    assert compare_order(Qp, P) == "lex-smaller"
    assert compare_order(P, P) == "dims-equal"
    # exterior square precedes symmetric square: at n = 2 dims are 1 vs 3
    assert compare_order(ExtF(2, IdF()), SymF(2, IdF())) == "lex-smaller"
    assert dimension_sequence(ExtF(2, IdF()), 2, 2) == (0, 1)
    assert dimension_sequence(SymF(2, IdF()), 2, 2) == (0, 3)


def test_compare_order_transitive_irreflexive():
    rng = random.Random(26)
    exprs = [random_functor(rng) for _ in range(10)]
    for a in exprs:
        assert compare_order(a, a) == "dims-equal"
    for a in exprs:
        for b in exprs:
            ab = compare_order(a, b)
            for c in exprs:
                if ab == "lex-smaller" and compare_order(b, c) == "lex-smaller":
                    assert compare_order(a, c) == "lex-smaller"
            if ab == "lex-smaller":
                assert compare_order(b, a) == "lex-greater"


def test_compare_higher_degree_dominates():
    # a huge low-degree part loses to any nonzero higher degree part
    A = SumF((TensorF((ConstF(100), IdF())),))
    B = SymF(2, IdF())
    assert compare_order(A, B) == "lex-smaller"


# -- grammar ------------------------------------------------------------------------


def test_functor_grammar_round_trip():
    rng = random.Random(27)
    for _ in range(30):
        expr = random_functor(rng)
        assert parse_functor(format_functor(expr)) == expr


def test_functor_grammar_examples():
    assert parse_functor("shift(2,tensor(id,id))") == ShiftF(2, TensorF((IdF(), IdF())))
    assert parse_functor("quot(sum(id,const(2)),1)") == QuotF(SumF((IdF(), ConstF(2))), 1)
    with pytest.raises(Exception):
        parse_functor("sym(2")


# -- basis labelling -----------------------------------------------------------------


def test_basis_labels_deterministic_and_degree_aware():
    expr = SymF(2, IdF())
    labels = basis_labels(expr, 2)
    assert len(labels) == 3
    assert all(label_degree(lab) == 2 for lab in labels)
    # moving degree counts indices beyond the split point
    split_counts = sorted(label_vdeg(lab, 1) for lab in labels)
    assert split_counts == [0, 1, 2]


def test_normalize_merges_constants():
    expr = TensorF((ConstF(2), ConstF(3), IdF()))
    (summand,) = normalize(expr)
    assert summand == TensorF((ConstF(6), IdF()))
    assert normalize(ConstF(0)) == ()
