"""Exception types raised by slicereg.

Every error carries the short message text the CLI prints verbatim.
"""


class SliceRegError(ValueError):
    """Base class for all domain errors in this package."""


class NonInvertibleError(SliceRegError, ZeroDivisionError):
    def __init__(self, msg="non-invertible"):
        super().__init__(msg)


class OnZeroSetError(SliceRegError):
    def __init__(self, msg="on zero set of symmetrization"):
        super().__init__(msg)


class VanishesAtPointError(SliceRegError):
    def __init__(self, msg="f vanishes at q"):
        super().__init__(msg)


class ReciprocalUndefinedError(SliceRegError):
    def __init__(self, msg="reciprocal series undefined: f(0)=0"):
        super().__init__(msg)


class ConsistencyError(SliceRegError, ArithmeticError):
    """Internal result violates an algebraic guarantee (signals corrupted input)."""


class NotASphereError(SliceRegError):
    def __init__(self, msg="not a sphere"):
        super().__init__(msg)


class ZeroFunctionError(SliceRegError):
    def __init__(self, msg="zero function"):
        super().__init__(msg)


class RootFinderError(SliceRegError):
    def __init__(self, msg="root finder failed to converge", diagnostics=None):
        super().__init__(msg)
        self.diagnostics = diagnostics or {}


class TrustRegionError(SliceRegError):
    def __init__(self, msg="region outside trust radius"):
        super().__init__(msg)


class NotOrthogonalError(SliceRegError):
    def __init__(self, msg="units not orthogonal"):
        super().__init__(msg)


class FunctionFileError(SliceRegError):
    """Malformed function file; message names the offending line or field."""
