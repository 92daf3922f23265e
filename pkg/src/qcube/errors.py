"""Exception hierarchy shared by every qcube module."""


class QCubeError(Exception):
    pass


class ShapeError(QCubeError, ValueError):
    """Bad cube parameters, coordinates or mismatched shapes."""


class CapExceeded(QCubeError):
    """The requested object would exceed a configured resource cap."""


class TrivialSetError(QCubeError, ValueError):
    """The set is empty or the whole cube where a 2-coloring is required."""


class ParseError(QCubeError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(QCubeError):
    """An identity that must hold for every input failed; indicates a bug."""
