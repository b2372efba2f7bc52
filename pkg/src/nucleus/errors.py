"""Exception hierarchy shared by every module of the package."""


class NucleusError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(NucleusError, ValueError):
    def __init__(self, lineno, line, reason="expected two non-negative integer vertex ids"):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class UndefinedDensityError(NucleusError, ValueError):
    pass


class UnsupportedParameterError(NucleusError, ValueError):
    pass


class CapacityError(NucleusError, MemoryError):
    """Estimated storage exceeds the configured memory budget."""


class ConsistencyError(NucleusError):
    """Artifacts computed from different inputs were mixed."""


class OracleGuardError(NucleusError, ValueError):
    """Brute-force reference asked to run on a graph that is too large."""


class InvariantError(NucleusError, AssertionError):
    """A structural invariant of the decomposition does not hold."""
