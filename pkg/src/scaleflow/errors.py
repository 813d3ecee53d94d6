"""Exception types raised by scaleflow."""


class FlowInputError(ValueError):
    """Malformed graph input (bad endpoint, negative capacity, ...)."""


class ContractViolation(AssertionError):
    """A precondition of a low-level operation was broken by the caller."""


class ParseError(ValueError):
    """Raised by the file parsers; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SamplingError(ValueError):
    """No terminal pair can be drawn from the requested degree band."""

    def __init__(self, message, band=None):
        self.band = band
        super().__init__(message)


class GenerationError(RuntimeError):
    """A random graph generator could not meet its postcondition."""


class GomoryHuError(RuntimeError):
    """A cut oracle returned a result that breaks its contract."""
