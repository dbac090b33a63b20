"""Exception types shared across the package."""


class PermutonLabError(Exception):
    """Base class for all package errors."""


class BoundExceeded(PermutonLabError):
    """An exhaustive routine was asked for an input above its configured bound."""


class PreconditionViolated(PermutonLabError):
    """An input is outside the class or domain an operation requires."""


class ShapeMismatch(PermutonLabError):
    pass


class NotATraversal(PermutonLabError):
    pass


class ReconstructionFailure(PermutonLabError):
    """Inverse growth rules met an inconsistent label triple."""


class InnerBijectionFailure(PermutonLabError):
    """The inner shape bijection produced an image outside the target set."""


class LayerOverflow(PermutonLabError):
    pass


class InvalidRect(PermutonLabError, ValueError):
    pass


class InvalidDelta(PermutonLabError, ValueError):
    pass
