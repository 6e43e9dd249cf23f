"""Exception hierarchy shared by every module of the package."""


class OmalousError(ValueError):
    """Base class for all domain errors raised by this package."""


class VarietyMismatchError(OmalousError):
    """Two objects that must live on the same variety do not."""


class HypothesisError(OmalousError):
    """Parameters fall outside the range where a construction is valid.

    The message names the violated hypothesis, e.g. ``"requires n >= 3"``.
    """


class VanishingAssumptionError(OmalousError):
    """An Euler characteristic is positive, so it cannot be ``-h^1``."""
