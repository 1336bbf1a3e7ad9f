"""Exception types shared across the package."""


class ZigzagError(Exception):
    """Base class for all library errors."""


class DegenerateSide(ZigzagError):
    """A side length is zero or negative (boundary of the moduli cell)."""


class EmbeddingViolation(ZigzagError):
    """The constructed polygonal arc intersects itself."""


class EpsTooLarge(ZigzagError):
    """Handle-insertion parameter outside the admissible range."""


class QuadratureFailure(ZigzagError):
    """A quadrature did not reach the requested tolerance."""


class NoConvergence(ZigzagError):
    """The prevertex parameter problem did not converge.

    Carries the iteration trace in ``trace`` (list of residual norms).
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])


class FitFailure(ZigzagError):
    """A least-squares model fit failed its certification threshold."""


class DegenerateCrossRatio(ZigzagError):
    """Two of the four cross-ratio points coincide."""


class DomainError(ZigzagError):
    """Argument outside the mathematical domain of an operation."""


class StepTooLarge(ZigzagError):
    """Finite-difference step too large for the distance to the boundary."""


class LadderFailure(ZigzagError):
    """Continuation ladder stalled.

    ``records`` holds the partial ladder (genus -> SolutionRecord) built
    before the failing genus, ``failed_genus`` the genus that stalled.
    """

    def __init__(self, message, records=None, failed_genus=None):
        super().__init__(message)
        self.records = dict(records or {})
        self.failed_genus = failed_genus


class NotReflexive(ZigzagError):
    """NE and SW prevertex tuples differ beyond tolerance."""


class PeriodMismatch(ZigzagError):
    """A Weierstrass period check failed; carries the offending report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
