"""Error types shared across the package.

Every error carries a stable ``code`` (its class name) so the service layer
can surface structured {code, message} bodies.
"""


class CurveCountError(Exception):
    """Base class for all package errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ZeroInput(CurveCountError):
    """An operation received an identically zero polynomial."""


class NonReducedCurve(CurveCountError):
    """The curve has a repeated factor."""


class PrecisionExhausted(CurveCountError):
    """Certified refinement hit the configured depth cap undecided."""


class UnclassifiedSingularity(CurveCountError):
    """Jets beyond the implemented depth would be needed."""


class NotRationalCubic(CurveCountError):
    """Parametrization requested for a smooth or reducible cubic."""


class ComponentContainment(CurveCountError):
    """The line divides the curve."""


class DegenerateConfig(CurveCountError):
    """Point configuration fails the genericity certificate."""


class IdenticallySingularPencil(CurveCountError):
    """Every member of the pencil is singular."""


class OnWall(CurveCountError):
    """Configuration sits on a wall and strict mode is active."""


class UnsupportedDegree(CurveCountError):
    """Requested degree outside the exact pipeline's scope."""


class ChartBreakdown(CurveCountError):
    """A mark hit the excluded locus of the chosen chart."""


class InstabilityError(CurveCountError):
    """Stable-map stability violated (degree-0 component short on special points)."""


class StepTooLarge(CurveCountError):
    """Local-degree probe step does not localize the branches."""


class IdenticallyDegeneratePath(CurveCountError):
    """Wall resultant vanishes identically along the path."""


class InvariantViolation(CurveCountError):
    """A wall-crossing invariant failed; this is a bug or a new wall type."""


class SamplerExhausted(CurveCountError):
    """Rejection sampling hit its retry cap."""


class ExceptionalDivisorHit(CurveCountError):
    """A configuration point coincides with a blown-up base point."""
