"""Exception types shared across the package.

The CLI maps these onto process exit codes: usage problems exit 1,
:class:`DataError` exits 2 and :class:`GuardError` exits 3.
"""


class QdownfoldError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(QdownfoldError):
    """Operands act on different numbers of qubits."""


class DataError(QdownfoldError):
    """Malformed or inconsistent input data (files, coefficients, flags)."""


class GuardError(QdownfoldError):
    """A resource guard was exceeded (dense-matrix size, enumeration size)."""


class EmptyCandidateSetError(QdownfoldError):
    """The pair-factorization search produced no commutator candidates.

    Raised distinctly so drivers can fall back to the canonical partition
    element instead of aborting.
    """


class InternalInconsistencyError(QdownfoldError):
    """An internal invariant failed (e.g. flat energy curve for a generator
    that was screened as having a nonzero gradient)."""
