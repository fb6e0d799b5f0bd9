"""Exception taxonomy for the toolkit.

Numerical failure modes are first-class: callers distinguish "your input is
invalid" (ValidationError) from "the computation cannot certify its result"
(ContourError, QualityError, ...) because the latter are retried with refined
parameters while the former are programming errors.
"""


class MerorayError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(MerorayError):
    """Input violates a documented precondition."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class RangeError(MerorayError):
    """Requested value lies beyond the representable / accuracy-safe range."""


class CriticalPointError(MerorayError):
    """Schwarzian requested at a point where |f'| is below tolerance."""

    def __init__(self, z, scale):
        self.z = z
        self.scale = scale
        super().__init__(f"derivative vanishes within tolerance at z={z!r} (jet scale {scale:.3e})")


class PoleChartError(MerorayError):
    """Operation required a regular chart but only a reciprocal chart exists."""


class ContourError(MerorayError):
    """Argument-principle integral could not be resolved to an integer."""


class GeometryError(MerorayError):
    """Region/contour geometry invalid (e.g. root stuck on boundary after nudges)."""


class DivergenceError(MerorayError):
    """ODE transport step size underflowed before reaching the path end."""

    def __init__(self, t_reached, length):
        self.t_reached = t_reached
        self.length = length
        super().__init__(f"step size underflow at arclength {t_reached:.6g} of {length:.6g}")


class BasisError(MerorayError):
    """Fundamental-solution basis is degenerate (Wronskian below tolerance)."""


class AmbiguousCountError(MerorayError):
    """A zero sits on the counting interval's endpoint; adjust the interval."""


class QualityError(MerorayError):
    """Monte-Carlo / quadrature quality gate failed (e.g. too many censored walks)."""
