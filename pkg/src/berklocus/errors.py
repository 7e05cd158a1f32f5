"""Exception types shared across the engine.

Every error that a caller may want to branch on gets its own class; anything
raised from here signals a *usage* or *capability* problem, never a bug in the
arithmetic (internal invariant violations raise AssertionError instead).
"""


class BerklocusError(Exception):
    """Base class for all package errors."""


class ZeroPolynomial(BerklocusError):
    """Operation requires a nonzero polynomial."""


class ZeroDenominator(BerklocusError):
    """Rational map denominator is identically zero."""


class ConstantMap(BerklocusError):
    """Rational map must be nonconstant."""


class NegativeValuation(BerklocusError):
    """Residue requested for an element of negative valuation."""


class IdentityMap(BerklocusError):
    """Operation is undefined for the identity map."""


class IdentityTangentMap(BerklocusError):
    """Operation requires a non-identity tangent map."""


class NotFixed(BerklocusError):
    """Point or direction is not fixed."""


class MultiplierOne(BerklocusError):
    """A fixed point has multiplier exactly 1 where that is disallowed."""


class NeedsExtension(BerklocusError):
    """The computation leaves the working field tower.

    Attributes give the minimal (ramification, unramified-degree) pair that
    would make the computation representable.
    """

    def __init__(self, n=None, k=None, detail=""):
        self.n = n
        self.k = k
        self.detail = detail
        parts = []
        if n is not None:
            parts.append(f"n={n}")
        if k is not None:
            parts.append(f"k={k}")
        if detail:
            parts.append(detail)
        super().__init__("requires field extension: " + ", ".join(parts))


class ExplorationIncomplete(BerklocusError):
    """Exploration exceeded its configured budget; results are partial."""


class ArcNotFixed(BerklocusError):
    """The open arc between the given endpoints is not entirely fixed."""


class ClassicalComponent(BerklocusError):
    """Operation applies only to non-classical components."""


class NotHyperbolic(BerklocusError):
    """Operation applies only to hyperbolic components."""


class NotIndifferent(BerklocusError):
    """Operation applies only to indifferent components."""


class NoTotallyRamifiedFixedPoint(BerklocusError):
    """Map has no totally ramified fixed point."""


class PreconditionViolated(BerklocusError):
    """A stated precondition (such as a residue characteristic bound) fails."""


class NotDegreeOne(BerklocusError):
    """Moebius classification requires a degree-1 map."""


class WrongCase(BerklocusError):
    """The requested quantity is undefined for this Moebius case."""


class ParseError(BerklocusError):
    """Malformed map description."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        loc = ""
        if line is not None:
            loc += f" (line {line})"
        if field is not None:
            loc += f" (field {field!r})"
        super().__init__(message + loc)
