"""Exception hierarchy.

``ValidationError`` subclasses signal bad input (CLI exit code 2).
``CrossCheckFailure`` subclasses signal that an internal consistency check
failed, which always indicates a bug (CLI exit code 3).
"""


class TCError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(TCError, ValueError):
    pass


class LoopEdge(ValidationError):
    pass


class DuplicateEdge(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class NonpositiveLength(ValidationError):
    pass


class UnknownVertex(ValidationError):
    pass


class UnknownEdge(ValidationError):
    pass


class SameVertex(ValidationError):
    pass


class MassNotZero(ValidationError):
    pass


class NotSpanning(ValidationError):
    pass


class NotATree(ValidationError):
    pass


class NotACycle(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class NotAPlan(ValidationError):
    pass


class NonMetric(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class NonOptimalInput(ValidationError):
    pass


class TooManyTrees(ValidationError):
    def __init__(self, count, cap):
        super().__init__(f"graph has {count} spanning trees, cap is {cap}")
        self.count = count
        self.cap = cap


class CrossCheckFailure(TCError, RuntimeError):
    pass


class CertificateGap(CrossCheckFailure):
    def __init__(self, found, claimed):
        super().__init__(f"dual value {found} is below the claimed norm {claimed}")
        self.found = found
        self.claimed = claimed
