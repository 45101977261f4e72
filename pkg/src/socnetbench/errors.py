"""Exception hierarchy shared by every module."""


class BenchError(Exception):
    """Base class for all toolkit errors."""


class MalformedInputError(BenchError, ValueError):
    pass


class ParseError(MalformedInputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyGraphError(BenchError, ValueError):
    pass


class UndefinedDensityError(BenchError, ValueError):
    pass


class IntegrityError(BenchError):
    pass


class EmptyDatasetError(BenchError, ValueError):
    pass


class InsufficientSourceError(BenchError):
    pass


class StallError(BenchError):
    pass


class EmptyQuadrantError(BenchError):
    pass


class SaturationError(BenchError):
    pass


class TooSmallGraphError(BenchError, ValueError):
    pass


class UndefinedModularityError(BenchError, ValueError):
    pass


class IncompatibleSampleError(BenchError, ValueError):
    pass


class EmptyInputError(BenchError, ValueError):
    pass
