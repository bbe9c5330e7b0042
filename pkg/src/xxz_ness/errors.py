"""Exception types raised across the package."""


class NessError(ValueError):
    """Base class for all domain errors."""


class NonUnitaryRegime(NessError):
    pass


class AmbiguousRegime(NessError):
    pass


class DegenerateDenominator(NessError):
    pass


class ZeroStereoCoord(NessError):
    pass


class PoleInB(NessError):
    pass


class PoleInG(NessError):
    pass


class MemoryGuard(NessError):
    pass


class NormalizationFailure(NessError):
    pass


class UndefinedArg(NessError):
    pass


class IndexOutOfRange(NessError, IndexError):
    pass


class DimensionMismatch(NessError):
    pass


class NoConvergence(RuntimeError):
    """Power iteration hit ``max_iter`` before reaching ``tol``."""

    def __init__(self, max_iter, residual):
        super().__init__(f"no convergence after {max_iter} iterations (residual {residual:.3e})")
        self.max_iter = max_iter
        self.residual = residual
