"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class ResourceError(RuntimeError):
    """A brute-force path was asked to go past its configured cap."""


class InternalError(AssertionError):
    """A postcondition that the theory guarantees did not hold."""
