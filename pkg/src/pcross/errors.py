"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for every structured error raised by this package."""


class CapacityError(WorkbenchError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, what: str, needed, cap) -> None:
        super().__init__(f"{what}: needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


# -- group construction ------------------------------------------------------


class EmptyGroup(WorkbenchError):
    pass


class NotLatinSquare(WorkbenchError):
    pass


class NonAssociativeTable(WorkbenchError):
    pass


class IdentityNotFirst(WorkbenchError):
    """An explicit table is a group, but its identity is not element 0."""


class IndexOutOfRange(WorkbenchError):
    pass


# -- partial dynamical systems -----------------------------------------------


class PointOutOfRange(WorkbenchError):
    pass


class MalformedMap(WorkbenchError):
    """A partial map is not injective or is defined on the wrong key set."""


class DomainMismatch(WorkbenchError):
    pass


class InvalidSystem(WorkbenchError):
    """An operation that requires a valid system was handed an invalid one."""

    def __init__(self, message, report=None) -> None:
        super().__init__(message)
        self.report = report


# -- split rings and twisted actions -----------------------------------------


class SizeMismatch(WorkbenchError):
    pass


class NotAUnit(WorkbenchError):
    pass


class NotBijective(WorkbenchError):
    pass


class MalformedBijection(WorkbenchError):
    pass


class MalformedCocycle(WorkbenchError):
    pass


class CoefficientOutsideIdeal(WorkbenchError):
    pass


class CocycleNotTrivial(WorkbenchError):
    """Operation only defined for actions lifted from dynamics (trivial cocycle)."""


# -- instances and CLI --------------------------------------------------------


class ParseError(WorkbenchError):
    def __init__(self, message, field=None) -> None:
        super().__init__(message if field is None else f"{message} (field: {field})")
        self.field = field


class ValidationError(WorkbenchError):
    """An instance parsed structurally but failed axiom validation."""

    def __init__(self, message, failures=()) -> None:
        super().__init__(message)
        self.failures = list(failures)


# -- internal cross-checks ----------------------------------------------------


class DualRouteMismatch(WorkbenchError):
    """Two independent computations of the same quantity disagreed.

    This always indicates a transcription bug, never bad input, and is
    deliberately fatal rather than a warning.
    """


class OracleDisagreement(WorkbenchError):
    """A decision-procedure verdict and the brute-force oracle disagreed."""
