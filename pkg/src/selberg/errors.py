"""Exception hierarchy shared by all modules."""


class SelbergError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(SelbergError, ValueError):
    """An input violates a documented precondition."""


class VerificationError(SelbergError):
    """An internal consistency check failed."""


# hyperbolic core
class IndeterminateClass(PreconditionError):
    """|trace| is too close to 2 to decide the conjugacy type."""


class NotHyperbolic(PreconditionError):
    pass


# fuchsian
class PrecisionExhausted(VerificationError):
    pass


class IncompleteBall(VerificationError):
    """The enumerated ball cannot certify the requested completeness."""


class InconclusivePrimitivity(PreconditionError):
    pass


# zeta
class DivergentTail(PreconditionError):
    pass


class OutsideConvergence(PreconditionError):
    pass


# spectral terms / divisor / cohomology
class PoleHit(PreconditionError):
    pass


class InsufficientSamples(PreconditionError):
    pass


class UnsupportedLambda(PreconditionError):
    pass


class UnknownSpectralRegion(PreconditionError):
    pass
