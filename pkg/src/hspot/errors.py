"""Exception types shared across the toolkit."""


class HspotError(Exception):
    """Base class for all toolkit errors."""


class DomainError(HspotError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """An evaluation point coincides (within 1e-12) with a kernel singularity."""


class CapacityError(HspotError, ValueError):
    """A size/degree cap was exceeded (e.g. polynomial degree above 64)."""


class UsageError(HspotError, ValueError):
    """Malformed request: unknown identifier, inconsistent options, bad config."""


class PreconditionError(HspotError, ValueError):
    """A documented precondition does not hold for the supplied inputs."""


class ToleranceNotMet(HspotError, RuntimeError):
    """Adaptive refinement hit its depth budget before reaching tolerance.

    Carries the best value computed so far in ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
