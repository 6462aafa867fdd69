"""Exception types raised across the package."""


class LisbonError(Exception):
    pass


class MismatchedArity(LisbonError, ValueError):
    """Operands live in different numbers of variables."""


class IndexOutOfRange(LisbonError, IndexError):
    pass


class NoConvergence(LisbonError, ArithmeticError):
    """The root iteration hit its iteration cap."""


class DegenerateRoots(LisbonError, ArithmeticError):
    """Two roots are closer than the simple-root guard allows."""


class QuadratureNoConvergence(LisbonError, ArithmeticError):
    pass
