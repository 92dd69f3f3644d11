"""Define custom errors."""


def _restore(cls, args, state):
    error = cls.__new__(cls)
    error.args = args
    error.__dict__.update(state)
    return error


class ClSaddleError(Exception):

    """Base class for all ``clsaddle`` errors.

    Errors keep their attributes when pickled, so that they survive the
    trip back from sweep worker processes.
    """

    def __reduce__(self):
        return _restore, (type(self), self.args, self.__dict__)


class ConfigError(ClSaddleError):

    """Raised when a sweep configuration can not be used.

    The command line maps this error (and its subclasses) to exit
    code 2.
    """

    pass


class DenseSizeError(ClSaddleError):

    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        message = (
            "Refusing to densify a {0}x{0} matrix (limit is {1}). Use the "
            "sparse solver instead."
        ).format(size, limit)
        super().__init__(message)


class DimensionMismatchError(ClSaddleError, ValueError):

    def __init__(self, what, expected, got):
        self.expected = expected
        self.got = got
        message = "{} has length {}, expected {}.".format(what, got, expected)
        super().__init__(message)


class EmptyGridError(ClSaddleError):

    def __init__(self):
        message = (
            "Density grid needs at least one sample point per axis and a "
            "positive extent."
        )
        super().__init__(message)


class FitWindowError(ClSaddleError):

    def __init__(self, window, count):
        self.window = window
        self.count = count
        message = (
            "Fit window [{}, {}] contains {} point(s), at least 2 are "
            "required."
        ).format(window[0], window[1], count)
        super().__init__(message)


class InvalidConfigValueError(ConfigError):

    def __init__(self, key, value, reason):
        self.key = key
        self.value = value
        message = "Invalid value {!r} for \"{}\": {}.".format(value, key, reason)
        super().__init__(message)


class MissingConfigKeyError(ConfigError):

    def __init__(self, key):
        self.key = key
        message = "Missing required configuration key \"{}\".".format(key)
        super().__init__(message)


class NonPositiveWidthWarning(Warning):

    def __init__(self, gamma_diag, gamma_offdiag):
        message = (
            "Non-positive fall-off width (gamma_diag={}, gamma_offdiag={}). "
            "The reduced density matrix is not normalizable, which points to "
            "an upstream failure."
        ).format(gamma_diag, gamma_offdiag)
        super().__init__(message)


class NumericalError(ClSaddleError):

    """Base class for failures of the numerics.

    The command line maps this error (and its subclasses) to exit
    code 3.
    """

    pass


class InstabilityError(NumericalError):

    def __init__(self, eigenvalue):
        self.eigenvalue = eigenvalue
        message = (
            "Frequency-squared matrix has eigenvalue {} < 0: the bare "
            "potential is unbounded for these couplings."
        ).format(eigenvalue)
        super().__init__(message)


class NonPositiveDefiniteError(NumericalError):

    def __init__(self, block):
        self.block = block
        message = (
            "Reduced covariance block {} is not positive definite."
        ).format(block)
        super().__init__(message)


class NumericalInconsistencyError(NumericalError):

    """Raised when two quantities that must agree do not.

    For the J/K identities this means the quadratic form was assembled
    inconsistently between the two real-time branches.
    """

    def __init__(self, quantity, first, second):
        self.quantity = quantity
        self.first = first
        self.second = second
        message = "Inconsistent {}: {!r} != {!r}.".format(
            quantity, first, second
        )
        super().__init__(message)


class ParameterDomainError(ClSaddleError, ValueError):

    def __init__(self, name, value, rule):
        self.name = name
        self.value = value
        message = "Invalid {}={!r}: must satisfy {}.".format(name, value, rule)
        super().__init__(message)


class SingularMatrixError(NumericalError):

    def __init__(self, pivot_index=None, pivot=None):
        self.pivot_index = pivot_index
        self.pivot = pivot
        if pivot_index is None:
            message = "Matrix is exactly singular."
        else:
            message = (
                "Matrix is singular: pivot {!r} at variable index {}."
            ).format(pivot, pivot_index)
        super().__init__(message)


class SweepPointError(NumericalError):

    def __init__(self, parameters, t, error):
        self.parameters = parameters
        self.t = t
        self.error = error
        message = (
            "\n\nAn error occurred while evaluating {} at t={}:\n\n{}: {}"
        ).format(parameters, t, type(error).__name__, error)
        super().__init__(message)


class UndefinedRescalingError(ClSaddleError):

    def __init__(self):
        message = (
            "The rescaled width is undefined at gamma=0 (no coupling to the "
            "environment)."
        )
        super().__init__(message)


class UnknownConfigKeyError(ConfigError):

    def __init__(self, key, known):
        self.key = key
        message = "Unknown configuration key \"{}\". Known keys are: {}.".format(
            key, ", ".join(sorted(known))
        )
        super().__init__(message)
