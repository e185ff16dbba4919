"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit with 2,
numerical failures with 3.
"""


class Chi2ArrayError(Exception):
    """Base class for all package-specific errors."""


class ScenarioError(Chi2ArrayError, ValueError):
    """Invalid configuration, scenario file, or request (exit code 2)."""


class NumericalError(Chi2ArrayError, RuntimeError):
    """Base class for numerical failures (exit code 3)."""


class IntegrationError(NumericalError):
    """The ODE integrator failed (step underflow, divergence, non-finite state)."""


class SymplecticError(NumericalError):
    """A Bogoliubov propagator violated the canonical-commutator structure."""


class PhysicalityError(NumericalError):
    """An evolved state violated the uncertainty principle beyond tolerance."""
