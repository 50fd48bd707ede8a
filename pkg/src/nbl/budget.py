import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded

DEFAULT_MAX_TUPLES = 10**7
DEFAULT_MAX_ORBIT = 10**7


@dataclass
class Budget:
    """Resource limits for one computation; the clock starts at construction."""

    max_tuples: int = DEFAULT_MAX_TUPLES
    max_orbit: int = DEFAULT_MAX_ORBIT
    timeout_secs: float | None = None
    _deadline: float | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.timeout_secs is not None:
            self._deadline = time.monotonic() + self.timeout_secs

    def check_time(self, phase, partial=None):
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise BudgetExceeded(phase, f"{self.timeout_secs}s", partial)


UNLIMITED = Budget(max_tuples=2**62, max_orbit=2**62)
