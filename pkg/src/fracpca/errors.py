"""Exception types shared across the package."""


class FracpcaError(Exception):
    """Base class for all fracpca errors."""


class DomainError(FracpcaError):
    """A proximal-operator input left the closed form's valid domain.

    Raised when the arccos argument of the nonzero-root formula falls
    outside [-1, 1] by more than the configured numerical slack, or when
    a non-finite entry is fed to an elementwise operator.  ``index`` is
    the offending position: an int for vectors, a (row, col) tuple for
    matrices, None for scalar calls.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConvergenceError(FracpcaError):
    """A numerical factorization failed or missed its accuracy target."""


class DegenerateInput(FracpcaError):
    """An input is structurally unusable (zero matrix, out-of-range order statistic)."""


class ConfigError(FracpcaError):
    """A run-configuration file or backend setting is invalid."""


class MatrixParseError(FracpcaError):
    """A matrix file could not be parsed.

    ``line`` and ``col`` are 1-based positions of the offending token
    (col is None for structural errors such as ragged rows).
    """

    def __init__(self, message, line=None, col=None):
        super().__init__(message)
        self.line = line
        self.col = col
