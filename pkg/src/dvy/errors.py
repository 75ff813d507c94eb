"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class DiversityError(Exception):
    """Base class for all errors raised by :mod:`dvy`."""


class InputError(DiversityError, ValueError):
    """Malformed or incomplete input data (missing subsets, bad JSON, unknown names)."""


class SizeError(DiversityError, ValueError):
    """An instance exceeds one of the hard desk-scale caps."""


class DomainError(DiversityError, ValueError):
    """Input is well formed but violates a mathematical precondition."""


class ConvergenceError(DiversityError, RuntimeError):
    """An iterative procedure failed to reach its exact fixpoint."""


class InfeasibleError(DiversityError, RuntimeError):
    """A linear program has no feasible point."""
