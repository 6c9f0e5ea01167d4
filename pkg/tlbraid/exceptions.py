class ConfigError(ValueError):
    pass


class ValidationError(ValueError):
    pass


class BraidError(ValueError):
    pass


class BracketBudgetError(ValueError):
    pass


class NumericsError(ValueError):
    pass


class DimensionError(NumericsError):
    pass


class NotUnitaryError(NumericsError):
    pass


class EncodingError(ValueError):
    pass


class LabelingError(EncodingError):
    pass


class FiniteImageError(ValueError):
    pass


class NotABridgeError(ValueError):
    pass


class NetCoverageError(ValueError):
    pass


class NetTransferError(ValueError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class CircuitError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
