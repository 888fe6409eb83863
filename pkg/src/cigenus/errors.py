class CigenusError(Exception):
    """Base class for errors raised by this package."""


class InvalidInput(CigenusError, ValueError):
    pass


class InfeasibleError(CigenusError):
    """No admissible gamma profile exists for the requested data.

    ``smallest_feasible_m`` is filled in when a feasible choice is known.
    """

    def __init__(self, message, smallest_feasible_m=None):
        super().__init__(message)
        self.smallest_feasible_m = smallest_feasible_m


class ResourceError(CigenusError, RuntimeError):
    """An enumeration would exceed its budget."""
