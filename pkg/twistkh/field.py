"""Field module.

Exact arithmetic in the field of rational functions over GF(2) in the arc
variables of a diagram, together with substitutions and matrix rank.

Elements are sympy ``PolyElement`` and ``FracElement`` values over ``GF(2)``
in generators ``v0, v1, ...``, one per variable id. Rings grow in blocks of
generators as ids are used; values from a smaller ring are widened before
they meet values from a larger one.

This module provides the following classes:

- VariableRegistry
- Polynomial
- RationalFunction
- Substitution

and the functions ``fraction_field``, ``add``, ``mul``, ``inv``,
``is_zero``, ``eval_ext``, ``substitute``, ``rank`` and ``gf2_rref``.
"""

from __future__ import annotations

__all__ = [
    "GF2",
    "Monomial",
    "Polynomial",
    "RationalFunction",
    "Substitution",
    "VariableRegistry",
    "add",
    "eval_ext",
    "fraction_field",
    "gf2_rref",
    "inv",
    "is_zero",
    "mul",
    "rank",
    "substitute",
]

import logging
from collections.abc import Iterable, Mapping, Sequence
from functools import lru_cache
from typing import Literal

import numpy as np
import sympy
from sympy.polys.domains import GF
from sympy.polys.fields import FracElement, FracField
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement

from twistkh import exceptions
from twistkh.galois import gf_add, gf_inv, gf_mul, gf_pow, random_element

logger = logging.getLogger(__name__)

GF2 = GF(2)

# Sorted (variable-id, exponent) pairs with positive exponents.
Monomial = tuple[tuple[int, int], ...]

RankMode = Literal["exact", "randomized"]

_BLOCK = 16


def _capacity(var: int) -> int:
    return (var // _BLOCK + 1) * _BLOCK


@lru_cache(maxsize=None)
def fraction_field(size: int = _BLOCK) -> FracField:
    """Return the field GF(2)(v0, ..., v{size-1}).

    Args:
        size: Number of generators.
    """
    return FracField(sympy.symbols(f"v:{size}"), GF2, lex)


def _widen(a: PolyElement, b: PolyElement) -> tuple[PolyElement, PolyElement]:
    if a.ring == b.ring:
        return a, b
    if a.ring.ngens < b.ring.ngens:
        return a.set_ring(b.ring), b
    return a, b.set_ring(a.ring)


def _widen_fractions(a: FracElement, b: FracElement) -> tuple[FracElement, FracElement]:
    if a.field == b.field:
        return a, b
    if a.field.ngens < b.field.ngens:
        return a.set_field(b.field), b
    return a, b.set_field(a.field)


class VariableRegistry:
    """The universe of formal variables of a diagram.

    Variable ids are dense integers starting at 0; each id carries a display
    name.

    Args:
        names: Display names in id order.
    """

    __slots__ = ("_index", "names")

    def __init__(self: VariableRegistry, names: Iterable[str] = ()) -> None:
        """Initialize a VariableRegistry with the given display names."""
        self.names: list[str] = []
        self._index: dict[str, int] = {}
        for name in names:
            self.add(name)

    def __len__(self: VariableRegistry) -> int:
        """Return the number of registered variables."""
        return len(self.names)

    def __contains__(self: VariableRegistry, name: object) -> bool:
        """Return whether a display name is registered."""
        return name in self._index

    def add(self: VariableRegistry, name: str) -> int:
        """Register a new variable and return its id.

        Raises:
            VariableCollision: If the name is already registered.
        """
        if name in self._index:
            msg = f"variable name '{name}' is already registered"
            raise exceptions.VariableCollision(msg)
        self._index[name] = len(self.names)
        self.names.append(name)
        return self._index[name]

    def id_of(self: VariableRegistry, name: str) -> int:
        """Return the id of a registered display name."""
        return self._index[name]

    def name(self: VariableRegistry, var: int) -> str:
        """Return the display name of a variable id."""
        return self.names[var]

    def var(self: VariableRegistry, name: str) -> RationalFunction:
        """Return the variable with this display name as a field element."""
        return RationalFunction(Polynomial.variable(self._index[name]))

    def merge(
        self: VariableRegistry, other: VariableRegistry
    ) -> tuple[VariableRegistry, Substitution]:
        """Concatenate two registries.

        Args:
            other: The registry appended after this one.

        Returns:
            The merged registry and the substitution that moves elements
            written over ``other`` into it.

        Raises:
            VariableCollision: If the registries share a display name.
        """
        merged = VariableRegistry(self.names)
        shift = {}
        for var, name in enumerate(other.names):
            shift[var] = Polynomial.variable(merged.add(name))
        return merged, Substitution(shift)


class Polynomial:
    """A polynomial over GF(2) in the variables of a registry.

    Args:
        rep: The sympy polynomial; zero when omitted.
    """

    __slots__ = ("rep",)

    def __init__(self: Polynomial, rep: PolyElement | None = None) -> None:
        """Initialize a Polynomial."""
        self.rep = fraction_field().ring.zero if rep is None else rep

    @classmethod
    def zero(cls: type[Polynomial]) -> Polynomial:
        """Return the zero polynomial."""
        return cls()

    @classmethod
    def one(cls: type[Polynomial]) -> Polynomial:
        """Return the constant polynomial 1."""
        return cls(fraction_field().ring.one)

    @classmethod
    def variable(cls: type[Polynomial], var: int) -> Polynomial:
        """Return the polynomial consisting of one variable."""
        return cls(fraction_field(_capacity(var)).ring.gens[var])

    @classmethod
    def sum_of(cls: type[Polynomial], parts: Iterable[Polynomial]) -> Polynomial:
        """Return the sum of several polynomials."""
        total = cls()
        for part in parts:
            total = total + part
        return total

    def __bool__(self: Polynomial) -> bool:
        """Return whether the polynomial is nonzero."""
        return bool(self.rep)

    def __eq__(self: Polynomial, other: object) -> bool:
        """Compare after widening to a common ring."""
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = _widen(self.rep, other.rep)
        return a == b

    def __hash__(self: Polynomial) -> int:
        """Hash the set of monomials."""
        return hash(frozenset(self.monomials()))

    def __add__(self: Polynomial, other: Polynomial) -> Polynomial:
        """Add in characteristic 2."""
        a, b = _widen(self.rep, other.rep)
        return Polynomial(a + b)

    __sub__ = __add__

    def __mul__(self: Polynomial, other: Polynomial) -> Polynomial:
        """Multiply two polynomials."""
        a, b = _widen(self.rep, other.rep)
        return Polynomial(a * b)

    def __repr__(self: Polynomial) -> str:
        """Return the canonical text with generic variable names."""
        return f"Polynomial({self.to_text()!r})"

    def monomials(self: Polynomial) -> list[Monomial]:
        """Return the monomials as sorted (variable-id, exponent) pairs."""
        return [tuple((var, exp) for var, exp in enumerate(monom) if exp) for monom in self.rep.itermonoms()]

    def is_constant(self: Polynomial) -> bool:
        """Return whether the polynomial is 0 or 1."""
        return self.rep.is_ground

    def is_one(self: Polynomial) -> bool:
        """Return whether the polynomial is the constant 1."""
        return self.rep == self.rep.ring.one

    def degree(self: Polynomial) -> int:
        """Return the total degree, -1 for the zero polynomial."""
        return max((sum(monom) for monom in self.rep.itermonoms()), default=-1)

    def variables(self: Polynomial) -> set[int]:
        """Return the ids of the variables occurring in the polynomial."""
        return {var for monom in self.rep.itermonoms() for var, exp in enumerate(monom) if exp}

    def substitute(self: Polynomial, assignment: Mapping[int, Polynomial]) -> Polynomial:
        """Apply a ring homomorphism given on variables.

        Raises:
            UnassignedVariable: If a variable of the polynomial has no image.
        """
        used = self.variables()
        missing = used - assignment.keys()
        if missing:
            msg = f"no image for variables {sorted(missing)}"
            raise exceptions.UnassignedVariable(msg)
        if not used:
            return self
        size = max(self.rep.ring.ngens, *(assignment[var].rep.ring.ngens for var in used))
        ring = fraction_field(size).ring
        images = [(ring.gens[var], assignment[var].rep.set_ring(ring)) for var in sorted(used)]
        return Polynomial(self.rep.set_ring(ring).compose(images))

    def evaluate(self: Polynomial, point: Mapping[int, int]) -> int:
        """Evaluate at a point of GF(2^64).

        Raises:
            KeyError: If a variable of the polynomial has no coordinate.
        """
        total = 0
        for monom in self.monomials():
            value = 1
            for var, exp in monom:
                value = gf_mul(value, gf_pow(point[var], exp))
            total = gf_add(total, value)
        return total

    def to_text(self: Polynomial, registry: VariableRegistry | None = None) -> str:
        """Render the canonical text form.

        Monomials are '+'-separated and sorted by variable id then exponent;
        variables inside a monomial are '*'-separated with '^' exponents.
        """
        if not self.rep:
            return "0"
        parts = []
        for monom in sorted(self.monomials()):
            if not monom:
                parts.append("1")
                continue
            factors = []
            for var, exp in monom:
                name = registry.name(var) if registry is not None else f"v{var}"
                factors.append(name if exp == 1 else f"{name}^{exp}")
            parts.append("*".join(factors))
        return "+".join(parts)


class RationalFunction:
    """An element of the fraction field, kept in lowest terms.

    Args:
        num: The numerator.
        den: The denominator, 1 when omitted.

    Raises:
        DivisionByZero: If the denominator is zero.
    """

    __slots__ = ("rep",)

    def __init__(self: RationalFunction, num: Polynomial, den: Polynomial | None = None) -> None:
        """Initialize a RationalFunction from numerator and denominator."""
        if den is None:
            den = Polynomial.one()
        if not den:
            msg = "rational function with zero denominator"
            raise exceptions.DivisionByZero(msg)
        numer, denom = _widen(num.rep, den.rep)
        self.rep: FracElement = fraction_field(numer.ring.ngens).new(numer, denom)

    @classmethod
    def _wrap(cls: type[RationalFunction], rep: FracElement) -> RationalFunction:
        value = cls.__new__(cls)
        value.rep = rep
        return value

    @classmethod
    def zero(cls: type[RationalFunction]) -> RationalFunction:
        """Return 0."""
        return cls._wrap(fraction_field().zero)

    @classmethod
    def one(cls: type[RationalFunction]) -> RationalFunction:
        """Return 1."""
        return cls._wrap(fraction_field().one)

    @classmethod
    def variable(cls: type[RationalFunction], var: int) -> RationalFunction:
        """Return a variable as a field element."""
        return cls(Polynomial.variable(var))

    @classmethod
    def sum_of(cls: type[RationalFunction], parts: Iterable[RationalFunction]) -> RationalFunction:
        """Return the sum of several field elements."""
        total = cls.zero()
        for part in parts:
            total = total + part
        return total

    @property
    def num(self: RationalFunction) -> Polynomial:
        """The numerator in lowest terms."""
        return Polynomial(self.rep.numer)

    @property
    def den(self: RationalFunction) -> Polynomial:
        """The denominator in lowest terms."""
        return Polynomial(self.rep.denom)

    def __bool__(self: RationalFunction) -> bool:
        """Return whether the element is nonzero."""
        return bool(self.rep.numer)

    def __eq__(self: RationalFunction, other: object) -> bool:
        """Compare reduced fractions after widening to a common field."""
        if isinstance(other, int) and other in (0, 1):
            other = RationalFunction.one() if other else RationalFunction.zero()
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a, b = _widen_fractions(self.rep, other.rep)
        return a == b

    def __hash__(self: RationalFunction) -> int:
        """Hash numerator and denominator."""
        return hash((self.num, self.den))

    def __add__(self: RationalFunction, other: RationalFunction) -> RationalFunction:
        """Add two field elements."""
        a, b = _widen_fractions(self.rep, other.rep)
        return RationalFunction._wrap(a + b)

    __sub__ = __add__

    def __mul__(self: RationalFunction, other: RationalFunction) -> RationalFunction:
        """Multiply two field elements."""
        a, b = _widen_fractions(self.rep, other.rep)
        return RationalFunction._wrap(a * b)

    def __truediv__(self: RationalFunction, other: RationalFunction) -> RationalFunction:
        """Divide by a nonzero field element."""
        return self * other.inverse()

    def __pow__(self: RationalFunction, exponent: int) -> RationalFunction:
        """Raise to an integer power."""
        if exponent < 0 and not self:
            msg = "cannot raise zero to a negative power"
            raise exceptions.DivisionByZero(msg)
        return RationalFunction._wrap(self.rep**exponent)

    def __repr__(self: RationalFunction) -> str:
        """Return the canonical text with generic variable names."""
        return f"RationalFunction({self.to_text()!r})"

    def inverse(self: RationalFunction) -> RationalFunction:
        """Return the multiplicative inverse.

        Raises:
            DivisionByZero: If the element is zero.
        """
        if not self:
            msg = "cannot invert the zero rational function"
            raise exceptions.DivisionByZero(msg)
        return RationalFunction._wrap(self.rep.field.raw_new(self.rep.denom, self.rep.numer))

    def is_one(self: RationalFunction) -> bool:
        """Return whether the element is 1."""
        return self.rep == self.rep.field.one

    def is_constant(self: RationalFunction) -> bool:
        """Return whether the element lies in GF(2)."""
        return self.rep.numer.is_ground and self.rep.denom.is_ground

    def variables(self: RationalFunction) -> set[int]:
        """Return the variable ids of numerator and denominator."""
        return self.num.variables() | self.den.variables()

    def to_text(self: RationalFunction, registry: VariableRegistry | None = None) -> str:
        """Render as ``num`` or ``(num) / (den)``."""
        if self.den.is_one():
            return self.num.to_text(registry)
        return f"({self.num.to_text(registry)}) / ({self.den.to_text(registry)})"


class Substitution:
    """A ring homomorphism given by the images of variables.

    Every variable of an argument must have an image, except for the
    identity substitution, which fixes everything.

    Args:
        assignment: Map from variable id to its image polynomial.
    """

    __slots__ = ("assignment", "is_identity")

    def __init__(self: Substitution, assignment: Mapping[int, Polynomial], *, is_identity: bool = False) -> None:
        """Initialize a Substitution."""
        self.assignment = dict(assignment)
        self.is_identity = is_identity

    @classmethod
    def identity(cls: type[Substitution]) -> Substitution:
        """Return the identity substitution."""
        return cls({}, is_identity=True)

    @classmethod
    def updating(cls: type[Substitution], registry: VariableRegistry, images: Mapping[int, Polynomial]) -> Substitution:
        """Return the substitution fixing every variable of a registry except ``images``.

        Args:
            registry: The variables to assign.
            images: Images of the variables that move.
        """
        assignment = {var: Polynomial.variable(var) for var in range(len(registry))}
        assignment.update(images)
        return cls(assignment)

    def __call__(self: Substitution, value: RationalFunction) -> RationalFunction:
        """Apply the substitution to a field element."""
        return substitute(value, self)

    def then(self: Substitution, other: Substitution) -> Substitution:
        """Return the composite that applies this substitution, then ``other``.

        Raises:
            UnassignedVariable: If ``other`` misses a variable of an image.
        """
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        return Substitution({var: poly.substitute(other.assignment) for var, poly in self.assignment.items()})


def add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    """Return ``a + b``."""
    return a + b


def mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    """Return ``a * b``."""
    return a * b


def inv(a: RationalFunction) -> RationalFunction:
    """Return ``1 / a``.

    Raises:
        DivisionByZero: If ``a`` is zero.
    """
    return a.inverse()


def is_zero(a: RationalFunction) -> bool:
    """Return whether the numerator of ``a`` vanishes."""
    return not a


def eval_ext(a: RationalFunction, point: Mapping[int, int]) -> int:
    """Evaluate a rational function at a point of GF(2^64).

    Args:
        a: The rational function.
        point: Map from variable id to a GF(2^64) element.

    Returns:
        The value as an integer-encoded field element.

    Raises:
        BadEvaluationPoint: If the denominator vanishes at the point.
    """
    den = a.den.evaluate(point)
    if den == 0:
        msg = f"denominator {a.den.to_text()} vanishes at the evaluation point"
        raise exceptions.BadEvaluationPoint(msg)
    num = a.num.evaluate(point)
    return gf_mul(num, gf_inv(den)) if num else 0


def substitute(a: RationalFunction, s: Substitution) -> RationalFunction:
    """Apply a substitution to numerator and denominator.

    Raises:
        UnassignedVariable: If a variable of ``a`` has no image.
        SubstitutionKillsDenominator: If the image of the denominator is zero.
    """
    if s.is_identity:
        return a
    den = a.den.substitute(s.assignment)
    if not den:
        msg = f"substitution sends denominator {a.den.to_text()} to zero"
        raise exceptions.SubstitutionKillsDenominator(msg)
    return RationalFunction(a.num.substitute(s.assignment), den)


def _exact_rank(matrix: Sequence[Sequence[RationalFunction]]) -> int:
    field = fraction_field(max(entry.rep.field.ngens for row in matrix for entry in row))
    elements = {}
    for i, row in enumerate(matrix):
        entries = {j: entry.rep.set_field(field) for j, entry in enumerate(row) if entry}
        if entries:
            elements[i] = entries
    if not elements:
        return 0
    shape = (len(matrix), len(matrix[0]))
    logger.debug("Exact rank of a %dx%d matrix with %d nonzero rows", *shape, len(elements))
    return DomainMatrix(elements, shape, field.to_domain()).rank()


def _gf_rank(matrix: list[list[int]]) -> int:
    rows = [row[:] for row in matrix if any(row)]
    found = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((i for i in range(found, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[found], rows[pivot] = rows[pivot], rows[found]
        inv_p = gf_inv(rows[found][col])
        for i in range(found + 1, len(rows)):
            if rows[i][col]:
                factor = gf_mul(rows[i][col], inv_p)
                rows[i] = [x ^ gf_mul(factor, y) for x, y in zip(rows[i], rows[found])]
        found += 1
        if found == len(rows):
            break
    return found


def _randomized_rank(
    matrix: Sequence[Sequence[RationalFunction]], seed: int, retries: int
) -> int:
    variables = sorted({v for row in matrix for entry in row for v in entry.variables()})
    rng = np.random.default_rng(seed)
    for attempt in range(retries):
        point = {var: random_element(rng) for var in variables}
        try:
            values = [[eval_ext(entry, point) for entry in row] for row in matrix]
        except exceptions.BadEvaluationPoint:
            logger.debug("Evaluation point %d hit a vanishing denominator", attempt)
            continue
        return _gf_rank(values)
    msg = f"no usable evaluation point after {retries} attempts"
    raise exceptions.BadEvaluationPoint(msg)


def rank(
    matrix: Sequence[Sequence[RationalFunction]],
    mode: RankMode = "exact",
    seed: int = 0,
    retries: int = 8,
) -> int:
    """Compute the rank of a matrix of rational functions.

    Args:
        matrix: Rows of field elements, all of one length.
        mode: ``"exact"`` for Gaussian elimination over the rational function
            field, ``"randomized"`` for the rank at a random GF(2^64) point.
        seed: Seed of the numpy generator used in randomized mode.
        retries: Number of evaluation points tried in randomized mode.

    Returns:
        The rank.

    Raises:
        BadEvaluationPoint: If randomized mode finds no usable point.
    """
    if not matrix or not matrix[0]:
        return 0
    if mode == "randomized":
        return _randomized_rank(matrix, seed, retries)
    return _exact_rank(matrix)


def gf2_rref(rows: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Row reduce a 0/1 matrix over GF(2).

    Args:
        rows: A two dimensional array of zeros and ones.

    Returns:
        The nonzero rows of the reduced row echelon form and their pivot
        columns.
    """
    mat = (np.asarray(rows, dtype=np.uint8) & 1).copy()
    if mat.size == 0:
        return mat.reshape(0, mat.shape[1] if mat.ndim == 2 else 0), []
    pivots: list[int] = []
    row = 0
    for col in range(mat.shape[1]):
        hits = np.nonzero(mat[row:, col])[0]
        if hits.size == 0:
            continue
        pivot = row + int(hits[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        others = np.nonzero(mat[:, col])[0]
        for other in others:
            if other != row:
                mat[other] ^= mat[row]
        pivots.append(col)
        row += 1
        if row == mat.shape[0]:
            break
    return mat[:row], pivots
