"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed user input: bad indices, self-loops, unparsable files."""


class ContractViolation(ValueError):
    """A caller broke an operation's precondition."""


class ValidationError(ValueError):
    """A provided structure (decomposition, FVS, orientation) is invalid."""


class CapExceeded(RuntimeError):
    """An exact solver refused an instance larger than its configured cap."""


class InvariantError(AssertionError):
    """An internal guarantee failed; this indicates a bug, never bad input."""


class PreconditionError(ContractViolation):
    """A solver was handed an instance outside its domain (e.g. a cyclic graph)."""
