import random

import pytest

from polyfunctor import (
    CharacteristicError,
    DirectionSubspace,
    GradedRing,
    additive_basis,
    directional_data,
    directional_derivative,
    hasse_derivative,
    is_additive,
    joint_additivity_holds,
    joint_scaling_holds,
    lucas_binomial,
    parse_polynomial,
    specialise_joint,
    taylor_expand,
)
from polyfunctor.errors import DirectionError

from conftest import ALL_FIELDS, F2, F3, F5, Q, random_poly, random_scalar


def xyz_ring(field):
    return GradedRing(field, ["x", "y", "z"])


def taylor_coefficient_oracle(f, w_coords, r, W):
    """Expand f(x + t*w) by direct substitution and read the t^r coefficient."""
    ring = f.ring
    ext = ring.extended([("t", "aux", 0)])
    mapping = {n: ext.var(n) for n in ring.names}
    t = ext.var("t")
    for name, c in zip(W.span_vars, w_coords):
        mapping[name] = ext.var(name) + t * ring.field.scalar(c)
    expanded = f.substitute(mapping)
    return expanded.coeff_of_power("t", r, ring)


def test_order_zero_is_identity():
    ring = xyz_ring(Q)
    f = parse_polynomial("x^2*y + z", ring)
    W = DirectionSubspace(ring, ("x",))
    assert hasse_derivative(f, W.direction([1]), 0, W) == f


def test_monomial_rule_frozen_value():
    ring = GradedRing(Q, ["x"])
    f = parse_polynomial("x^6", ring)
    W = DirectionSubspace(ring, ("x",))
    d2 = hasse_derivative(f, W.direction([1]), 2, W)
    # oracle: coefficient of t^2 in (x+t)^6 is binomial(6,2) x^4 = 15 x^4
    assert d2 == taylor_coefficient_oracle(f, [1], 2, W)
    assert d2 == parse_polynomial("15*x^4", ring)


def test_characteristic_five_example():
    ring = xyz_ring(F5)
    f = parse_polynomial("y^25*z^2 + x^10*y^25*z", ring)
    W = DirectionSubspace(ring, ("x", "y"))
    for a, b in ((1, 1), (2, 3), (4, 0)):
        w = W.direction([a, b])
        for r in range(1, 5):
            assert hasse_derivative(f, w, r, W).is_zero()
        d5 = hasse_derivative(f, w, 5, W)
        expected = ring.var("x") ** 5 * ring.var("y") ** 25 * ring.var("z") * (
            2 * F5.scalar(a) ** 5
        )
        assert d5 == expected
        assert d5 == taylor_coefficient_oracle(f, [a, b], 5, W)


def test_zero_direction_convention():
    ring = xyz_ring(Q)
    f = parse_polynomial("x^2", ring)
    W = DirectionSubspace(ring, ("x",))
    assert hasse_derivative(f, W.direction([0]), 3, W).is_zero()


def test_direction_outside_subspace_rejected():
    ring = xyz_ring(Q)
    W = DirectionSubspace(ring, ("x", "y"))
    f = parse_polynomial("x", ring)
    from polyfunctor import Vector

    with pytest.raises(DirectionError):
        hasse_derivative(f, Vector("d", ("z",), (Q.one(),)), 1, W)


def test_adapted_basis_independence():
    rng = random.Random(7)
    for field in (Q, F3, F5):
        ring = xyz_ring(field)
        W = DirectionSubspace(ring, ("x", "y", "z"))
        for _ in range(20):
            f = random_poly(rng, ring, max_degree=5, max_terms=5)
            coords = [random_scalar(rng, field) for _ in range(3)]
            if not any(coords):
                continue
            w = W.direction(coords)
            for r in (1, 2, 3):
                first = hasse_derivative(f, w, r, W, _pivot="first")
                last = hasse_derivative(f, w, r, W, _pivot="last")
                assert first == last


def test_scaling_law():
    rng = random.Random(8)
    for field in (Q, F3):
        ring = xyz_ring(field)
        W = DirectionSubspace(ring, ("x", "y"))
        for _ in range(15):
            f = random_poly(rng, ring, max_degree=4, max_terms=4)
            coords = [random_scalar(rng, field) for _ in range(2)]
            c = random_scalar(rng, field)
            scaled = W.direction([c * x for x in coords])
            base = W.direction(coords)
            for r in (1, 2, 3):
                assert hasse_derivative(f, scaled, r, W) == hasse_derivative(f, base, r, W) * c ** r


def test_composition_law_against_taylor_oracle():
    # iterated derivatives compose with a binomial factor
    rng = random.Random(9)
    for field in (Q, F2, F5):
        ring = GradedRing(field, ["x", "y"])
        W = DirectionSubspace(ring, ("x",))
        w = W.direction([1])
        for _ in range(10):
            f = random_poly(rng, ring, max_degree=6, max_terms=4)
            for r in (1, 2):
                for s in (1, 2):
                    lhs = hasse_derivative(hasse_derivative(f, w, s, W), w, r, W)
                    rhs = hasse_derivative(f, w, r + s, W) * lucas_binomial(r + s, r, field)
                    assert lhs == rhs


def test_taylor_constant():
    ring = xyz_ring(Q)
    f = ring.const(5)
    W = DirectionSubspace(ring, ("x",))
    expanded = taylor_expand(f, W)
    assert expanded.is_constant()
    assert expanded.constant_value() == Q.scalar(5)


def test_taylor_matches_direct_substitution():
    ring = GradedRing(Q, [(n, "main", 2) for n in ("x_1_1", "x_1_2", "x_2_1", "x_2_2")])
    f = parse_polynomial("x_1_1*x_2_2 - x_1_2*x_2_1", ring)
    W = DirectionSubspace(ring, ring.names)
    expanded = taylor_expand(f, W)
    ext = expanded.ring
    mapping = {n: ext.var(n) + ext.var("t") * ext.var(n + "_w") for n in ring.names}
    assert expanded == f.substitute(mapping)


def test_taylor_lowest_power_characteristic_five():
    ring = xyz_ring(F5)
    f = parse_polynomial("y^25*z^2 + x^10*y^25*z", ring)
    W = DirectionSubspace(ring, ("x", "y"))
    expanded = taylor_expand(f, W)
    powers = [p for p in expanded.powers_of("t") if p > 0]
    assert min(powers) == 5
    coeff = expanded.coeff_of_power("t", 5)
    data = directional_data(f, W)
    assert data.level == 1
    assert coeff == data.joint.convert(coeff.ring)


def test_directional_data_running_example():
    names = ["y_1_1", "y_1_2", "y_2_2", "z_1_2"]
    ring = GradedRing(Q, [(n, "q" if n.startswith("y") else "r", 2) for n in names])
    f = parse_polynomial("y_1_1*y_2_2 - y_1_2^2 + z_1_2^2", ring)
    W = DirectionSubspace(ring, ("z_1_2",))
    data = directional_data(f, W)
    assert data.dependent and data.level == 0
    joint = data.joint
    copy = data.copies[0][1]
    expected = joint.ring.var("z_1_2") * joint.ring.var(copy) * 2
    assert joint == expected
    # specialisation at the skew basis direction
    d = directional_derivative(f, W.direction([1]), W)
    assert d == parse_polynomial("2*z_1_2", ring)


def test_directional_data_independent():
    names = ["y_1_1", "y_2_2", "z_1_2"]
    ring = GradedRing(Q, names)
    f = parse_polynomial("y_1_1*y_2_2", ring)
    W = DirectionSubspace(ring, ("z_1_2",))
    data = directional_data(f, W)
    assert data.status == "independent"
    assert directional_derivative(f, W.direction([1]), W).is_zero()


def test_directional_derivative_of_constant_is_zero():
    ring = xyz_ring(Q)
    W = DirectionSubspace(ring, ("x",))
    assert directional_derivative(ring.const(3), W.direction([1]), W).is_zero()


def test_directional_derivative_char_three_brute_force():
    p = 3
    ring = GradedRing(F3, ["x", "y", "z"])
    f = parse_polynomial(f"y^{p * p}*z^2 + x^{2 * p}*y^{p * p}*z", ring)
    W = DirectionSubspace(ring, ("x", "y"))
    data = directional_data(f, W)
    assert data.level == 1
    for a, b in ((1, 1), (2, 1), (1, 0)):
        w = W.direction([a, b])
        value = specialise_joint(data, w, W)
        oracle = taylor_coefficient_oracle(f, [a, b], p, W)
        assert value == oracle
        expected = ring.var("x") ** p * ring.var("y") ** (p * p) * ring.var("z") * (
            2 * F3.scalar(a) ** p
        )
        assert value == expected


def test_additive_basis_examples():
    ring_q = GradedRing(Q, ["x", "y"])
    Wq = DirectionSubspace(ring_q, ("x", "y"))
    assert additive_basis(Wq, 0) == [ring_q.var("x"), ring_q.var("y")]
    with pytest.raises(CharacteristicError):
        additive_basis(Wq, 1)

    ring3 = GradedRing(F3, ["x", "y"])
    W3 = DirectionSubspace(ring3, ("x", "y"))
    assert additive_basis(W3, 1) == [ring3.var("x") ** 3, ring3.var("y") ** 3]

    ring2 = GradedRing(F2, ["z"])
    W2 = DirectionSubspace(ring2, ("z",))
    assert additive_basis(W2, 2) == [ring2.var("z") ** 4]


def test_is_additive_examples():
    ring_q = GradedRing(Q, ["x", "y"])
    Wq = DirectionSubspace(ring_q, ("x", "y"))
    ok, level = is_additive(parse_polynomial("x + y", ring_q), Wq)
    assert ok and level == 0
    ok, level = is_additive(parse_polynomial("x^2", ring_q), Wq)
    assert not ok

    ring2 = GradedRing(F2, ["x"])
    W2 = DirectionSubspace(ring2, ("x",))
    ok, level = is_additive(parse_polynomial("x^2", ring2), W2)
    assert ok and level == 1


def test_taylor_reassembly_fuzz():
    rng = random.Random(10)
    for field in ALL_FIELDS:
        ring = GradedRing(field, ["x", "y", "z", "w"])
        W = DirectionSubspace(ring, ("x", "y"))
        for _ in range(20):
            f = random_poly(rng, ring, max_degree=6, max_terms=5)
            expanded = taylor_expand(f, W)
            coords = [random_scalar(rng, field) for _ in range(2)]
            total = ring.zero()
            for k in expanded.powers_of("t"):
                joint = expanded.coeff_of_power("t", k)
                # specialise the symbolic copies at the concrete direction
                mapping = {n: ring.var(n) for n in ring.names}
                for name, c in zip(W.span_vars, coords):
                    mapping[name + "_w"] = ring.const(c)
                direct = joint.substitute(mapping) if not joint.is_zero() else ring.zero()
                hd = hasse_derivative(f, W.direction(coords), k, W)
                assert direct == hd
                total = total + direct  # reassembly at t = 1
            coord_map = dict(zip(W.span_vars, coords))
            mapping = {
                n: ring.var(n) + ring.const(coord_map[n]) if n in coord_map else ring.var(n)
                for n in ring.names
            }
            shifted = f.substitute(mapping) if not f.is_zero() else ring.zero()
            assert total == shifted


def test_lowest_power_is_characteristic_power():
    rng = random.Random(11)
    for field in ALL_FIELDS:
        p = field.char_exponent
        ring = GradedRing(field, ["x", "y", "z"])
        W = DirectionSubspace(ring, ("x", "y"))
        for _ in range(40):
            f = random_poly(rng, ring, max_degree=6, max_terms=5)
            data = directional_data(f, W)
            if data.dependent:
                assert p ** data.level >= 1  # construction already validated the power


def test_joint_laws_on_random_dependent_instances():
    rng = random.Random(12)
    for field in ALL_FIELDS:
        ring = GradedRing(field, ["x", "y", "z"])
        W = DirectionSubspace(ring, ("x", "y"))
        found = 0
        while found < 12:
            f = random_poly(rng, ring, max_degree=5, max_terms=5)
            data = directional_data(f, W)
            if not data.dependent:
                continue
            found += 1
            assert joint_additivity_holds(data)
            assert joint_scaling_holds(data)


def test_degree_drop_for_homogeneous_witness():
    # weight-homogeneous polynomial over weighted variables
    ring = GradedRing(F5, [("x", "r", 2), ("y", "q", 2)])
    f = parse_polynomial("x^5*y^5 + y^10", ring)
    W = DirectionSubspace(ring, ("x",))
    data = directional_data(f, W)
    assert data.level == 1
    d = specialise_joint(data, W.direction([1]), W)
    assert d.weighted_degree() == f.weighted_degree() - 2 * 5 ** data.level
