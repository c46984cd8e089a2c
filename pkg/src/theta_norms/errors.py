"""Exception and warning types raised across the package."""


class ThetaNormsError(ValueError):
    """Base class for all argument/precondition failures."""


class DomainError(ThetaNormsError):
    pass


class RangeError(ThetaNormsError):
    pass


class ArgError(ThetaNormsError):
    pass


class ShapeError(ThetaNormsError):
    pass


class SizeError(ThetaNormsError):
    pass


class ZeroWeightError(ThetaNormsError):
    pass


class PositivityError(ThetaNormsError):
    pass


class ConjugacyError(ThetaNormsError):
    pass


class TailError(ThetaNormsError):
    pass


class NonUniformGridError(ThetaNormsError):
    pass


class ZeroFunctionError(ThetaNormsError):
    pass


class InconsistencyError(ThetaNormsError):
    """Two independent evaluations of the same quantity disagree."""


class NormOverflowError(ThetaNormsError, OverflowError):
    """|x_k|^e overflowed; rescale the data (norms are homogeneous)."""


class ConfigError(ThetaNormsError):
    pass


class ConvergenceWarning(UserWarning):
    pass


class ParseError(ThetaNormsError):
    """Malformed input file; the message names the line."""
