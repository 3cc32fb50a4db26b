"""Exception hierarchy shared by all kahlercert modules."""


class KahlerCertError(Exception):
    """Base class for every error raised by this package."""


# exact linear algebra
class NonSquare(KahlerCertError, ValueError):
    pass


class Singular(KahlerCertError, ArithmeticError):
    pass


class NotSymmetric(KahlerCertError, ValueError):
    pass


# group construction
class OrderExceeded(KahlerCertError):
    """Closure produced more than ``max_order`` elements."""

    def __init__(self, max_order: int):
        super().__init__(
            f"group closure exceeded max_order={max_order}; "
            "the generators may generate an infinite group"
        )
        self.max_order = max_order


class NonIntegral(KahlerCertError, ValueError):
    pass


class NonUnimodular(KahlerCertError, ValueError):
    pass


class DimensionMismatch(KahlerCertError, ValueError):
    pass


# forms and complex structures
class Degenerate(KahlerCertError, ArithmeticError):
    pass


class NotPositive(KahlerCertError, ValueError):
    pass


class NotCompatible(KahlerCertError, ValueError):
    pass


class NotSymplectic(KahlerCertError, ValueError):
    pass


# numerical geometry
class NoConvergence(KahlerCertError, RuntimeError):
    def __init__(self, max_iters: int, residual: float):
        super().__init__(
            f"no convergence after {max_iters} iterations (residual {residual:.3e})"
        )
        self.max_iters = max_iters
        self.residual = residual


class StepTooLarge(KahlerCertError, ValueError):
    pass


class DegenerateOnSegment(KahlerCertError, ArithmeticError):
    pass


class RadiusTooSmall(KahlerCertError, RuntimeError):
    pass


class OddPhi(KahlerCertError, ValueError):
    pass


# documents
class DocumentError(KahlerCertError, ValueError):
    """A JSON document failed schema or consistency validation."""
