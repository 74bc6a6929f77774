import random

import pytest

from polyfunctor import (
    ConstF,
    ExtF,
    FieldDescriptor,
    IdF,
    QuotF,
    ShiftF,
    SumF,
    SymF,
    TenAltF,
    TenSymF,
    TensorF,
    normalize,
)

Q = FieldDescriptor.rationals()
F2 = FieldDescriptor.prime_field(2)
F3 = FieldDescriptor.prime_field(3)
F5 = FieldDescriptor.prime_field(5)

ALL_FIELDS = (Q, F2, F3, F5)


@pytest.fixture
def rng():
    return random.Random(0)


def random_scalar(rng, field, lo=-6, hi=6):
    if field.characteristic == 0:
        return field.scalar(rng.randint(lo, hi))
    return field.scalar(rng.randrange(field.characteristic))


def random_poly(rng, ring, max_degree=4, max_terms=5):
    terms = {}
    width = len(ring.names)
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * width
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            exps[rng.randrange(width)] += 1
        c = random_scalar(rng, ring.field)
        if c:
            terms[tuple(exps)] = c
    poly = ring.zero()
    for exps, c in terms.items():
        poly = poly + ring.monomial(exps, c)
    return poly


def random_matrix(rng, field, rows, cols, lo=-3, hi=3):
    return [[random_scalar(rng, field, lo, hi) for _ in range(cols)] for _ in range(rows)]


def random_functor(rng, max_degree=3, depth=2):
    """Small random expression, covering every constructor."""
    choices = ["const", "id", "tensor", "sum", "sym", "ext", "shift", "tsym", "talt", "quot"]
    kind = rng.choice(choices)
    if depth == 0 or kind == "id":
        return IdF()
    if kind == "const":
        return ConstF(rng.randint(1, 3))
    if kind == "tsym":
        return TenSymF()
    if kind == "talt":
        return TenAltF()
    if kind == "tensor":
        a = random_functor(rng, max_degree=2, depth=depth - 1)
        b = random_functor(rng, max_degree=2, depth=depth - 1)
        if a.degree() + b.degree() > max_degree:
            return a
        return TensorF((a, b))
    if kind == "sum":
        return SumF(
            (
                random_functor(rng, max_degree, depth - 1),
                random_functor(rng, max_degree, depth - 1),
            )
        )
    if kind == "sym":
        d = rng.randint(1, 2)
        inner = random_functor(rng, max_degree=1, depth=depth - 1)
        if d * inner.degree() > max_degree:
            return inner
        return SymF(d, inner)
    if kind == "ext":
        d = rng.randint(1, 2)
        inner = random_functor(rng, max_degree=1, depth=depth - 1)
        if d * inner.degree() > max_degree:
            return inner
        return ExtF(d, inner)
    if kind == "shift":
        return ShiftF(rng.randint(1, 2), random_functor(rng, max_degree, depth - 1))
    if kind == "quot":
        inner = random_functor(rng, max_degree, depth - 1)
        summands = normalize(inner)
        if len(summands) < 2:
            return inner
        return QuotF(inner, rng.randrange(len(summands)))
    return IdF()
