"""Exceptions raised by the monitor package."""


class MonitorError(ValueError):
    """Base class for every user-facing monitor failure."""


class IntervalSyntaxError(MonitorError):
    """Malformed interval literal, queue literal or rational."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class FormulaSyntaxError(MonitorError):
    """Formula text that does not match the grammar."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DegenerateIntervalError(MonitorError):
    """Timing interval that is empty or a single point."""


class TraceFormatError(MonitorError):
    """Trace document that cannot be turned into a valid Trace."""

    def __init__(self, message: str, proposition: str | None = None):
        self.proposition = proposition
        if proposition is not None:
            message = f"proposition '{proposition}': {message}"
        super().__init__(message)


class UndeclaredAtomError(MonitorError):
    """Formula refers to a proposition the trace does not declare."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"undeclared proposition: {name}")


class HorizonError(MonitorError):
    """Oracle horizon too small for the trace it is asked to certify."""


class OracleLimitError(HorizonError):
    """Critical partition larger than the configured sample limit."""


class RenderError(MonitorError):
    """SVG rendering cannot proceed with the given window."""
