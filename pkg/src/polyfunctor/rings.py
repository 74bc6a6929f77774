"""Sparse graded multivariate polynomials with exact coefficients.

A GradedRing fixes an ordered list of variables, each carrying the label of
the functor summand it lives on and a nonnegative integer weight (the degree
of that summand).  A GradedPoly is a canonical sparse map from exponent
vectors to nonzero scalars; the term order used for printing, leading terms
and division is graded lexicographic: weighted degree first, then the
exponent vector compared lexicographically with earlier variables more
significant.  Canonical form plus a fixed order makes all printed output
byte-stable.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AlgebraError, FieldMismatchError, RingMismatchError, SubstitutionError
from .fields import FieldDescriptor, Scalar


@dataclass(frozen=True)
class RingVariable:
    name: str
    part: str = "main"
    weight: int = 1

    def __post_init__(self):
        if not self.name or not (self.name[0].isalpha()):
            raise AlgebraError(f"bad variable name {self.name!r}")
        if self.weight < 0:
            raise AlgebraError("variable weight must be nonnegative")


def _as_variable(spec) -> RingVariable:
    if isinstance(spec, RingVariable):
        return spec
    if isinstance(spec, str):
        return RingVariable(spec)
    name, part, weight = spec
    return RingVariable(name, part, int(weight))


class GradedRing:
    """Ordered, part-labelled, weighted variable list over a fixed field."""

    __slots__ = ("field", "variables", "names", "weights", "_pos")

    def __init__(self, field: FieldDescriptor, variables=()):
        self.field = field
        self.variables = tuple(_as_variable(v) for v in variables)
        self.names = tuple(v.name for v in self.variables)
        self.weights = tuple(v.weight for v in self.variables)
        if len(set(self.names)) != len(self.names):
            raise AlgebraError("duplicate variable names")
        self._pos = {name: i for i, name in enumerate(self.names)}

    # -- ring derivation ---------------------------------------------------

    def extended(self, extra) -> "GradedRing":
        return GradedRing(self.field, self.variables + tuple(_as_variable(v) for v in extra))

    def without(self, names) -> "GradedRing":
        drop = set(names)
        missing = drop - set(self.names)
        if missing:
            raise AlgebraError(f"variables {sorted(missing)} not in ring")
        return GradedRing(self.field, tuple(v for v in self.variables if v.name not in drop))

    def position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise AlgebraError(f"variable {name!r} not in ring") from None

    def vars_of_part(self, part: str) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables if v.part == part)

    # -- element construction ----------------------------------------------

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {})

    def one(self) -> "GradedPoly":
        return self.const(1)

    def const(self, value) -> "GradedPoly":
        c = self.field.scalar(value)
        if not c:
            return self.zero()
        return GradedPoly(self, {(0,) * len(self.names): c})

    def var(self, name: str) -> "GradedPoly":
        i = self.position(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return GradedPoly(self, {exps: self.field.one()})

    def monomial(self, exps, coeff=1) -> "GradedPoly":
        exps = tuple(exps)
        if len(exps) != len(self.names):
            raise AlgebraError("exponent vector length mismatch")
        c = self.field.scalar(coeff)
        if not c:
            return self.zero()
        return GradedPoly(self, {exps: c})

    def order_key(self, exps):
        return (sum(e * w for e, w in zip(exps, self.weights)), exps)

    def __eq__(self, other):
        return (
            isinstance(other, GradedRing)
            and self.field == other.field
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __str__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    __repr__ = __str__


class GradedPoly:
    """Canonical sparse polynomial: exponent vector -> nonzero Scalar."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: dict, _canonical: bool = False):
        self.ring = ring
        if _canonical:
            self.terms = terms
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def support_vars(self) -> tuple[str, ...]:
        """Names of the variables that actually occur, in ring order."""
        used = [False] * len(self.ring.names)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def weighted_degree(self):
        """Maximum weighted degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        w = self.ring.weights
        return max(sum(e * wi for e, wi in zip(exps, w)) for exps in self.terms)

    def total_degree(self):
        if not self.terms:
            return None
        return max(sum(exps) for exps in self.terms)

    def is_weight_homogeneous(self) -> bool:
        w = self.ring.weights
        degs = {sum(e * wi for e, wi in zip(exps, w)) for exps in self.terms}
        return len(degs) <= 1

    def leading_item(self):
        """(exponents, coefficient) of the leading term under the ring order."""
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        exps = max(self.terms, key=self.ring.order_key)
        return exps, self.terms[exps]

    def constant_value(self) -> Scalar:
        zero_key = (0,) * len(self.ring.names)
        return self.terms.get(zero_key, self.ring.field.zero())

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self.terms)

    # -- arithmetic -----------------------------------------------------------

    def _check_same_ring(self, other: "GradedPoly"):
        if self.ring != other.ring:
            raise RingMismatchError(f"rings differ: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, GradedPoly):
            self._check_same_ring(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in o.terms.items():
            s = terms.get(exps)
            if s is None:
                terms[exps] = c
            else:
                s = s + c
                if s:
                    terms[exps] = s
                else:
                    del terms[exps]
        return GradedPoly(self.ring, terms, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.ring, {e: -c for e, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = self.ring.field.scalar(other)
            if not c:
                return self.ring.zero()
            return GradedPoly(
                self.ring, {e: k * c for e, k in self.terms.items()}, _canonical=True
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = terms.get(exps)
                if s is None:
                    if c:
                        terms[exps] = c
                else:
                    s = s + c
                    if s:
                        terms[exps] = s
                    else:
                        del terms[exps]
        return GradedPoly(self.ring, terms, _canonical=True)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise AlgebraError("polynomial exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_term(self, exps, coeff) -> "GradedPoly":
        """Multiply by a single monomial, exps relative to this ring."""
        c = self.ring.field.scalar(coeff)
        if not c or not self.terms:
            return self.ring.zero()
        return GradedPoly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): k * c for e, k in self.terms.items()},
            _canonical=True,
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.ring.const(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset((e, c.value) for e, c in self.terms.items())))

    # -- structural operations -------------------------------------------------

    def coeff_of_power(self, var: str, k: int, target_ring: GradedRing | None = None) -> "GradedPoly":
        """Coefficient polynomial of var**k, in the ring without var."""
        i = self.ring.position(var)
        if target_ring is None:
            target_ring = self.ring.without((var,))
        terms = {}
        for exps, c in self.terms.items():
            if exps[i] == k:
                terms[exps[:i] + exps[i + 1:]] = c
        return GradedPoly(target_ring, terms, _canonical=True)

    def max_power(self, var: str) -> int:
        i = self.ring.position(var)
        return max((exps[i] for exps in self.terms), default=0)

    def powers_of(self, var: str) -> tuple[int, ...]:
        i = self.ring.position(var)
        return tuple(sorted({exps[i] for exps in self.terms}))

    def convert(self, target_ring: GradedRing) -> "GradedPoly":
        """Re-express in another ring containing the same-named variables."""
        if target_ring.field != self.ring.field:
            raise FieldMismatchError("conversion across fields")
        positions = []
        for i, name in enumerate(self.ring.names):
            if name in target_ring._pos:
                positions.append((i, target_ring.position(name)))
            else:
                positions.append((i, None))
        width = len(target_ring.names)
        terms = {}
        for exps, c in self.terms.items():
            out = [0] * width
            for i, j in positions:
                if exps[i]:
                    if j is None:
                        raise AlgebraError(
                            f"variable {self.ring.names[i]!r} absent from target ring"
                        )
                    out[j] = exps[i]
            terms[tuple(out)] = c
        return GradedPoly(target_ring, terms, _canonical=True)

    def substitute(self, mapping: dict) -> "GradedPoly":
        """Ring homomorphism sending each variable to the assigned polynomial.

        The assignment must cover every variable occurring in the polynomial
        and all images must live in one common ring, which becomes the ring
        of the result.
        """
        if not mapping:
            raise SubstitutionError("empty substitution")
        target = None
        for img in mapping.values():
            if not isinstance(img, GradedPoly):
                raise SubstitutionError("substitution images must be polynomials")
            if target is None:
                target = img.ring
            elif img.ring != target:
                raise RingMismatchError("substitution images live in different rings")
        if target.field != self.ring.field:
            raise FieldMismatchError("substitution across fields")
        missing = [n for n in self.support_vars() if n not in mapping]
        if missing:
            raise SubstitutionError(f"missing assignment for {missing}")
        # cache of incremental powers per variable
        pow_cache: dict[str, list[GradedPoly]] = {}

        def power(name: str, e: int) -> GradedPoly:
            cache = pow_cache.setdefault(name, [target.one()])
            base = mapping[name]
            while len(cache) <= e:
                cache.append(cache[-1] * base)
            return cache[e]

        acc = target.zero()
        for exps, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(self.ring.names[i], e)
            acc = acc + term
        return acc

    def evaluate(self, point: dict) -> Scalar:
        """Evaluate at a point given as name -> scalar (ints are coerced)."""
        field = self.ring.field
        vals = {}
        for name in self.support_vars():
            if name not in point:
                raise SubstitutionError(f"missing coordinate for {name!r}")
        for name, v in point.items():
            vals[name] = field.scalar(v)
        total = field.zero()
        names = self.ring.names
        for exps, c in self.terms.items():
            acc = c
            for i, e in enumerate(exps):
                if e:
                    acc = acc * vals[names[i]] ** e
            total = total + acc
        return total

    # -- printing ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: self.ring.order_key(item[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        chunks = []
        for exps, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            negative = self.ring.field.characteristic == 0 and c.value < 0
            mag = -c if negative else c
            if factors and mag == self.ring.field.one():
                body = "*".join(factors)
            elif factors:
                body = f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            if not chunks:
                chunks.append(f"-{body}" if negative else body)
            else:
                chunks.append(f" - {body}" if negative else f" + {body}")
        return "".join(chunks)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"<{self.to_text()}>"


@dataclass(frozen=True)
class Vector:
    """Coordinates of a point or direction over a labelled basis."""

    space: str
    basis: tuple[str, ...]
    coords: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.basis) != len(self.coords):
            raise AlgebraError("vector length does not match its basis")

    @staticmethod
    def make(space: str, basis, coords, field: FieldDescriptor) -> "Vector":
        return Vector(space, tuple(basis), tuple(field.scalar(c) for c in coords))

    def as_dict(self) -> dict:
        return dict(zip(self.basis, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


# -- module-level forms of the basic operations --------------------------------


def poly_arith(a: GradedPoly, b: GradedPoly, op: str) -> GradedPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise AlgebraError(f"unknown operation {op!r}")


def substitute(f: GradedPoly, assignment: dict) -> GradedPoly:
    return f.substitute(assignment)


def weighted_degree(f: GradedPoly):
    return f.weighted_degree()


def coeff_of_power(f: GradedPoly, aux_var: str, k: int) -> GradedPoly:
    return f.coeff_of_power(aux_var, k)
