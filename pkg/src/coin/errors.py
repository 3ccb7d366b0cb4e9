"""Exception types shared across the package."""


class CoinError(Exception):
    """Base class for all package errors."""


class DimensionError(CoinError, ValueError):
    pass


class DegenerateEmbeddingError(CoinError, ValueError):
    """A row fell below the normalization floor (collapsed embedding)."""


class NumericError(CoinError, ArithmeticError):
    pass


class ParameterError(CoinError, ValueError):
    pass


class BatchSizeError(CoinError, ValueError):
    pass


class MetricUndefinedError(CoinError, ValueError):
    pass


class DegenerateDataError(CoinError, ValueError):
    pass


class SplitError(CoinError, ValueError):
    pass


class CheckpointParseError(CoinError, ValueError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class SpecValidationError(CoinError, ValueError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
