"""Exception types raised across the package."""


class LowSnrError(Exception):
    """Base class for all errors raised by this package."""


class NotPowerOfTwo(LowSnrError, ValueError):
    pass


class DimensionMismatch(LowSnrError, ValueError):
    pass


class Infeasible(LowSnrError, ValueError):
    """Parameters violate the average/peak power relation E <= K*Nt*T."""


class DegenerateSlot(LowSnrError, ValueError):
    """A space-time slot carries zero average power, so PAPR is undefined."""


class CardinalityOutOfRange(LowSnrError, ValueError):
    pass


class Undefined(LowSnrError, ValueError):
    pass


class NoZeroPoint(LowSnrError, ValueError):
    pass


class NotStorm(LowSnrError, ValueError):
    pass


class CaseInapplicable(LowSnrError, ValueError):
    """The power multiplier ``K Nt T - 2E/M`` would be negative for the requested M."""


class PdViolation(LowSnrError, ValueError):
    pass


class DimensionTooLarge(LowSnrError, ValueError):
    pass


class ZeroPointSkipped(UserWarning):
    """Emitted when the zero matrix is excluded from a pairwise computation."""
