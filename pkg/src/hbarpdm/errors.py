"""Exception types shared across the package."""


class NoStableOrbitError(ValueError):
    """The effective potential has no usable circular-orbit minimum."""


class UnstableOrbitError(NoStableOrbitError):
    """Orbit radii exist but none is a minimum (omega^2 <= 0 at all of them)."""


class DegenerateDenominatorError(ArithmeticError):
    """``2 m_0 + m_1`` vanishes at the orbit radius."""


class SingularRecursionError(ArithmeticError):
    """Leading log-derivative coefficient is zero."""


class StateNotFoundError(RuntimeError):
    """Energy bracketing could not isolate the requested radial state."""


class OracleConvergenceError(RuntimeError):
    """The shooting eigensolver failed to converge."""
