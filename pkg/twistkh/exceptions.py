"""Exceptions module.

This module provides the following classes:

- InputError
- SchemaError
- NonPlanarEvent
- ClosedFreeComponent
- UnknownFixture
- VariableCollision
- DivisionByZero
- BadEvaluationPoint
- SubstitutionKillsDenominator
- UnassignedVariable
- InactiveBridge
- WordTooLong
- BoundaryMismatch
- NonInvertiblePivot
- NeedsWordReduction
- CacheError
- StateBudgetExceeded
"""

from __future__ import annotations


class InputError(Exception):
    """Base class for errors caused by user supplied input."""

    def __init__(self: InputError, *args, **kwargs: dict[str, any]) -> None:
        """Initialize an InputError."""
        Exception.__init__(self, *args, **kwargs)


class SchemaError(InputError):
    """Class for diagram or job documents that fail validation."""

    def __init__(self: SchemaError, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a SchemaError."""
        InputError.__init__(self, *args, **kwargs)


class NonPlanarEvent(InputError):
    """Class for Morse events that refer to missing strand positions."""

    def __init__(self: NonPlanarEvent, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a NonPlanarEvent."""
        InputError.__init__(self, *args, **kwargs)


class ClosedFreeComponent(InputError):
    """Class for diagrams containing a closed component with no crossing."""

    def __init__(self: ClosedFreeComponent, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a ClosedFreeComponent."""
        InputError.__init__(self, *args, **kwargs)


class UnknownFixture(InputError):
    """Class for requests of fixtures that do not exist."""

    def __init__(self: UnknownFixture, *args, **kwargs: dict[str, any]) -> None:
        """Initialize an UnknownFixture."""
        InputError.__init__(self, *args, **kwargs)


class VariableCollision(InputError):
    """Class for merging variable registries that share a display name."""

    def __init__(self: VariableCollision, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a VariableCollision."""
        InputError.__init__(self, *args, **kwargs)


class DivisionByZero(ArithmeticError):
    """Class for inverting the zero element of a field."""

    def __init__(self: DivisionByZero, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a DivisionByZero."""
        ArithmeticError.__init__(self, *args, **kwargs)


class BadEvaluationPoint(ArithmeticError):
    """Class for evaluation points at which a denominator vanishes."""

    def __init__(self: BadEvaluationPoint, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a BadEvaluationPoint."""
        ArithmeticError.__init__(self, *args, **kwargs)


class SubstitutionKillsDenominator(ArithmeticError):
    """Class for substitutions sending a denominator to zero."""

    def __init__(
        self: SubstitutionKillsDenominator, *args, **kwargs: dict[str, any]
    ) -> None:
        """Initialize a SubstitutionKillsDenominator."""
        ArithmeticError.__init__(self, *args, **kwargs)


class UnassignedVariable(ArithmeticError):
    """Class for substitutions missing the image of a variable."""

    def __init__(self: UnassignedVariable, *args, **kwargs: dict[str, any]) -> None:
        """Initialize an UnassignedVariable."""
        ArithmeticError.__init__(self, *args, **kwargs)


class InactiveBridge(Exception):
    """Class for surgery requested along a bridge site that is not active."""

    def __init__(self: InactiveBridge, *args, **kwargs: dict[str, any]) -> None:
        """Initialize an InactiveBridge."""
        Exception.__init__(self, *args, **kwargs)


class WordTooLong(Exception):
    """Class for zero tests on words longer than two generators."""

    def __init__(self: WordTooLong, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a WordTooLong."""
        Exception.__init__(self, *args, **kwargs)


class BoundaryMismatch(Exception):
    """Class for structures or elements whose boundary idempotents disagree."""

    def __init__(self: BoundaryMismatch, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a BoundaryMismatch."""
        Exception.__init__(self, *args, **kwargs)


class NonInvertiblePivot(Exception):
    """Class for cancellation pivots that are not a unit times an idempotent."""

    def __init__(self: NonInvertiblePivot, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a NonInvertiblePivot."""
        Exception.__init__(self, *args, **kwargs)


class NeedsWordReduction(Exception):
    """Class for perturbation words that cannot be rewritten to length one."""

    def __init__(self: NeedsWordReduction, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a NeedsWordReduction."""
        Exception.__init__(self, *args, **kwargs)


class CacheError(Exception):
    """Class for any database cache errors."""

    def __init__(self: CacheError, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a CacheError."""
        Exception.__init__(self, *args, **kwargs)


class StateBudgetExceeded(Exception):
    """Class for jobs whose structures have more states than allowed."""

    def __init__(self: StateBudgetExceeded, *args, **kwargs: dict[str, any]) -> None:
        """Initialize a StateBudgetExceeded."""
        Exception.__init__(self, *args, **kwargs)
