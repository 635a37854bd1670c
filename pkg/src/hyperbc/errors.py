"""Exception hierarchy for the hyperbc library."""


class HyperBCError(Exception):
    """Base class for all hyperbc errors."""


class PoleError(HyperBCError):
    """Evaluation requested at (or too close to) a Gamma-function pole."""


class DomainError(HyperBCError):
    """Argument outside the supported evaluation domain."""


class NonConvergence(HyperBCError):
    """Series did not meet its tail bound within the iteration cap."""


class DegenerateLambda(HyperBCError):
    """Spectral parameter hits an excluded integer or a coincidence
    that the requested evaluation path cannot handle."""


class ParameterError(HyperBCError):
    """Multiplicity parameters outside the admissible set."""


class ChamberError(HyperBCError):
    """Point not in the open positive chamber t_1 > ... > t_n > 0."""


class HalfPlaneError(HyperBCError):
    """Spectral parameter outside the half-plane Re lambda_i > 0."""


class ZeroDenominator(HyperBCError):
    """Normalizing c-function value vanishes within tolerance."""


class SizeError(HyperBCError):
    """Rank n exceeds the supported combinatorial range."""


class SmallDenominator(HyperBCError):
    """Genericity margin of the series recursion fails."""


class TailTooLarge(HyperBCError):
    """Truncated series tail estimate exceeds the requested tolerance."""


class SingularityTooClose(HyperBCError):
    """Finite-difference stencil would touch a singular hyperplane."""


class StencilBlowup(HyperBCError):
    """Nested finite differencing lost too many significant digits."""
