"""Exception hierarchy shared by all modules."""


class NblError(Exception):
    """Base class for library errors."""


class GroupSpecError(NblError, ValueError):
    """A group description could not be parsed or is not a permutation group."""


class CapExceeded(NblError):
    """A group (or subgroup lattice) is larger than the configured cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class ForeignElementError(NblError, ValueError):
    """An element does not belong to the group it is used with."""


class BudgetExceeded(NblError):
    """A tuple-count, orbit-size or wall-clock budget was hit.

    ``phase`` names the stage that stopped and ``partial`` holds whatever had
    been produced so far (a count, or a list), so callers can report it.
    """

    def __init__(self, phase, limit, partial=None):
        super().__init__(f"budget exceeded during {phase} (limit {limit})")
        self.phase = phase
        self.limit = limit
        self.partial = partial


class PreconditionError(NblError, ValueError):
    """Inputs violate an operation's precondition (mixed modes, bad indices...)."""


class ExtensionError(NblError, ValueError):
    """A central extension failed validation.

    ``invariant`` is one of ``not-surjective``, ``not-homomorphism``,
    ``kernel-not-central``, ``not-c-admissible``; ``witness`` carries the
    offending elements in cycle notation.
    """

    def __init__(self, invariant, message, witness=None):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant
        self.witness = witness or {}
