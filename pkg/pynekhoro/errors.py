## @file errors.py
#  @brief Exception hierarchy shared by all pynekhoro subpackages
#
# Every class also derives from the builtin exception a caller would
# naturally catch, so `except ValueError` keeps working around
# argument errors and `except RuntimeError` around failed computations.
#


class NekhoroError(Exception):
    """! Base class of all pynekhoro errors"""


class InvalidArgumentError(NekhoroError, ValueError):
    """! An argument is outside the domain of the operation"""


class PreconditionError(NekhoroError, ValueError):
    """! A documented precondition of the operation does not hold"""


class ArithmeticOverflowError(NekhoroError, OverflowError):
    """! An exact integer intermediate left the signed 64-bit range"""


class DegenerateGradientError(NekhoroError, ValueError):
    """! The frequency map vanishes where it is required not to"""


class BudgetExceededError(NekhoroError, RuntimeError):
    """! An enumeration would exceed its configured budget"""


class ConvergenceError(NekhoroError, RuntimeError):
    """! A series or iteration did not converge"""


class NotFittableError(NekhoroError, ValueError):
    """! Not enough usable data to fit a power law"""


class IntegrationFailure(NekhoroError, RuntimeError):
    def __init__(self, message, partial=None, diagnostics=None):
        """! The implicit step did not converge
        @param message description of the failure
        @param partial the Trajectory computed before the failure, if any
        @param diagnostics dict with the failing time, residual and iteration count
        """
        super().__init__(message)
        self.partial = partial
        self.diagnostics = dict(diagnostics or {})
