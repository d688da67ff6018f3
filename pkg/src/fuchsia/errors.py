"""Exception types shared across the package.

The split mirrors the CLI exit-code contract: configuration problems
(:class:`ConfigError` and subclasses) exit with code 2, numerical failures
(:class:`NumericalError` and subclasses) with code 3.
"""


class FuchsiaError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(FuchsiaError):
    """Invalid configuration or parameters outside a routine's regime."""

    def __init__(self, message, pointer=None):
        super().__init__(message if pointer is None else f"{pointer}: {message}")
        self.pointer = pointer


class InvalidRegime(ConfigError):
    """Operation called with the wrong sign of n or wrong gcd structure."""


class RegimeViolation(ConfigError):
    """A chain is incompatible with the contour classes of the current regime."""


class NumericalError(FuchsiaError):
    """Base class for runtime numerical failures."""


class BranchPointHit(NumericalError):
    """A point or path came within the exclusion radius of a branch point."""


class StepFailure(NumericalError):
    """Sheet tracking became ambiguous even at the minimum step size."""


class ChainNotClosed(NumericalError):
    """The lift of a loop does not return to its starting sheet."""


class RadiusTooLarge(ConfigError):
    """Loop radius would enclose a point it must not enclose."""


class RadiusTooSmall(ConfigError):
    """Loop radius does not enclose the points it must enclose."""


class PoleTooClose(NumericalError):
    """An integration path passes too close to a pole of the integrand."""


class QuadratureNoConvergence(NumericalError):
    """Adaptive quadrature failed to reach tolerance within the depth cap."""


class SingularPoint(NumericalError):
    """Evaluation requested at (or too close to) a singular point."""


class ChainTooCloseToFiber(NumericalError):
    """A fixed contour sits too close to the fiber over the evaluation point."""


class GeometryFailure(NumericalError):
    """Automatic loop construction failed for this branch-point layout."""


class IntegrationFailure(NumericalError):
    """Adaptive ODE integration failed (step underflow or step cap)."""
