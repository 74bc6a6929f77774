"""Budgeted Buchberger engine for desk-scale ideal membership.

This is a verification aid, not a performance claim: plain Buchberger with
the coprime-leading-term criterion, run under an explicit step budget.  When
the budget runs out a BudgetExceededError is raised so a caller can report
"inconclusive" instead of guessing.

A zero remainder from plain division by the generators already certifies
membership (the division identity is an explicit combination), so
membership_by_division is offered as a cheap sound fast path that avoids
computing a basis; only completeness needs the Buchberger run.
"""

from __future__ import annotations

from .errors import AlgebraError, BudgetExceededError
from .rings import GradedPoly

DEFAULT_BUDGET = 50_000


class Budget:
    """Shared countdown over reduction steps and pair processing."""

    __slots__ = ("remaining",)

    def __init__(self, steps: int = DEFAULT_BUDGET):
        self.remaining = steps

    def spend(self, amount: int = 1):
        self.remaining -= amount
        if self.remaining < 0:
            raise BudgetExceededError("normal-form step budget exceeded")


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _monic(f: GradedPoly) -> GradedPoly:
    _, c = f.leading_item()
    return f * c.inverse()


def reduce_poly(f: GradedPoly, gens, budget: Budget | None = None) -> GradedPoly:
    """Full remainder of f under multivariate division by gens, in order."""
    if budget is None:
        budget = Budget()
    ring = f.ring
    leads = [(g.leading_item()[0], g.leading_item()[1], g) for g in gens if g]
    remainder = ring.zero()
    cur = f
    while cur:
        exps, coeff = cur.leading_item()
        hit = None
        for lt_exps, lt_coeff, g in leads:
            if _divides(lt_exps, exps):
                hit = (lt_exps, lt_coeff, g)
                break
        budget.spend()
        if hit is None:
            remainder = remainder + ring.monomial(exps, coeff)
            cur = cur - ring.monomial(exps, coeff)
        else:
            lt_exps, lt_coeff, g = hit
            cur = cur - g.mul_term(_sub(exps, lt_exps), coeff / lt_coeff)
    return remainder


def s_polynomial(f: GradedPoly, g: GradedPoly) -> GradedPoly:
    ef, cf = f.leading_item()
    eg, cg = g.leading_item()
    lcm = _lcm(ef, eg)
    return f.mul_term(_sub(lcm, ef), cf.inverse()) - g.mul_term(_sub(lcm, eg), cg.inverse())


def buchberger(gens, budget: Budget | None = None) -> list[GradedPoly]:
    """Groebner basis of the given generators under the ring order."""
    if budget is None:
        budget = Budget()
    basis = [_monic(g) for g in gens if g]
    if not basis:
        return []
    ring = basis[0].ring
    for g in basis:
        if g.ring != ring:
            raise AlgebraError("generators live in different rings")
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        budget.spend()
        pair = min(
            pairs,
            key=lambda ij: (
                ring.order_key(_lcm(basis[ij[0]].leading_item()[0], basis[ij[1]].leading_item()[0])),
                ij,
            ),
        )
        pairs.remove(pair)
        i, j = pair
        lt_i = basis[i].leading_item()[0]
        lt_j = basis[j].leading_item()[0]
        if _coprime(lt_i, lt_j):
            continue
        remainder = reduce_poly(s_polynomial(basis[i], basis[j]), basis, budget)
        if remainder:
            basis.append(_monic(remainder))
            new = len(basis) - 1
            pairs.update((k, new) for k in range(new))
    return basis


def normal_form(f: GradedPoly, generators, budget: Budget | None = None) -> GradedPoly:
    """Remainder of f modulo a Groebner basis of the generators.

    A zero result certifies ideal membership.  Intended for small instances
    (roughly up to 8 variables and degree 6); raises BudgetExceededError when
    the step budget is exhausted.
    """
    if budget is None:
        budget = Budget()
    gens = [g for g in generators if g]
    if not gens:
        return f
    basis = buchberger(gens, budget)
    return reduce_poly(f, basis, budget)


def membership_by_division(f: GradedPoly, generators, budget: Budget | None = None) -> bool:
    """True when plain division by the generators leaves remainder zero.

    A True answer certifies membership in the generated ideal; False is
    inconclusive on its own.
    """
    gens = [g for g in generators if g]
    if not gens:
        return f.is_zero()
    return reduce_poly(f, gens, budget).is_zero()


def divide_exact(f: GradedPoly, g: GradedPoly) -> GradedPoly | None:
    """Quotient f/g when the division is exact, else None."""
    if not g:
        raise AlgebraError("division by the zero polynomial")
    ring = f.ring
    eg, cg = g.leading_item()
    quotient = ring.zero()
    cur = f
    while cur:
        exps, coeff = cur.leading_item()
        if not _divides(eg, exps):
            return None
        shift = _sub(exps, eg)
        c = coeff / cg
        quotient = quotient + ring.monomial(shift, c)
        cur = cur - g.mul_term(shift, c)
    return quotient
