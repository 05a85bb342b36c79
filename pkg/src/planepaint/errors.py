"""Exception hierarchy shared by every planepaint module."""


class PlanePaintError(Exception):
    """Base class for all errors raised by planepaint."""


class EmbeddingError(PlanePaintError):
    """The rotation system does not describe a valid plane graph."""


class NotSimple(EmbeddingError):
    pass


class Disconnected(EmbeddingError):
    pass


class EulerViolation(EmbeddingError):
    pass


class FaceNotSimpleCycle(EmbeddingError):
    pass


class PlanarCodeError(EmbeddingError):
    """Malformed or unsupported planar_code input."""


class UnknownSpec(PlanePaintError):
    pass


class DegreeSumMismatch(PlanePaintError):
    pass


class NotBipartite(PlanePaintError):
    pass


class SizeLimitExceeded(PlanePaintError):
    pass


class HypothesisNotMet(PlanePaintError):
    pass


class BudgetExceeded(PlanePaintError):
    """A search outgrew its configured state or time budget.

    This means "too large at desk scale", never "the claim is false".
    """
