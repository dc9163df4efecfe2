"""Exception hierarchy shared by every module."""

from __future__ import annotations


class MatroidLCError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameters(MatroidLCError, ValueError):
    pass


class SizeCapExceeded(MatroidLCError):
    pass


class BudgetExceeded(SizeCapExceeded):
    pass


class InternalMismatch(MatroidLCError, AssertionError):
    """Two independent computations of the same quantity disagree."""


# lattice of flats


class AxiomViolation(MatroidLCError, ValueError):
    pass


class AxiomF1Violation(AxiomViolation):
    pass


class AxiomF2Violation(AxiomViolation):
    def __init__(self, first: frozenset, second: frozenset):
        self.witness = (first, second)
        super().__init__(
            f"intersection of {sorted(first)} and {sorted(second)} is not a flat"
        )


class AxiomF3Violation(AxiomViolation):
    def __init__(self, flat: frozenset, element: int, hits: int):
        self.witness = (flat, element)
        self.hits = hits
        super().__init__(
            f"element {element} lies in {hits} cover differences of flat {sorted(flat)}"
        )


class NotComparable(MatroidLCError, ValueError):
    pass


class LoopyMatroid(MatroidLCError, ValueError):
    pass


class RankOutOfRange(MatroidLCError, ValueError):
    pass


class ElementOutOfRange(MatroidLCError, ValueError):
    pass


class ImproperFlat(MatroidLCError, ValueError):
    pass


# algebra


class NotInvertible(MatroidLCError, ZeroDivisionError):
    pass


class NotDivisible(MatroidLCError, ArithmeticError):
    pass


class NotPrime(MatroidLCError, ValueError):
    pass


class ArityMismatch(MatroidLCError, ValueError):
    pass


# ample cone


class BoundaryViolation(MatroidLCError, ValueError):
    pass


class CertificationFailed(MatroidLCError):
    pass


# symmetric matrices and certificates


class NotSymmetric(MatroidLCError, ValueError):
    pass


class ZeroVector(MatroidLCError, ValueError):
    pass


class NotIrreducible(MatroidLCError, ValueError):
    pass


class NotWeaklyNonnegative(MatroidLCError, ValueError):
    pass


class NoConvergence(MatroidLCError, ArithmeticError):
    pass


class PreconditionViolated(MatroidLCError, ValueError):
    pass


class HypothesisFailed(MatroidLCError):
    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(message)


class ConclusionFailed(MatroidLCError):
    pass


class RankTooSmall(MatroidLCError, ValueError):
    pass


class NonPositiveRepresentative(MatroidLCError, ValueError):
    pass
