"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can map
failures to single-line diagnostics without string matching.
"""


class GestureQuadError(Exception):
    """Base class; ``code`` is stable across releases."""

    code = "Error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class DegenerateVector(GestureQuadError):
    """A joint-angle operand has zero length (missing/coincident landmarks)."""

    code = "DegenerateVector"


class MissingKeypoint(GestureQuadError):
    """A hand landmark required by a finger predicate is absent."""

    code = "MissingKeypoint"


class IllegalTransition(GestureQuadError):
    """Pipeline notification received in a phase that does not allow it."""

    code = "IllegalTransition"


class InvalidPosture(GestureQuadError):
    """Robot command incompatible with the current posture; command ignored."""

    code = "InvalidPosture"


class ConfigError(GestureQuadError):
    """Gesture/course configuration file violates its schema."""

    code = "ConfigError"


class OrderViolation(GestureQuadError):
    """Event timestamp earlier than the last recorded one."""

    code = "OrderViolation"


class CorruptRecord(GestureQuadError):
    """Unreadable session record; carries the 1-based line number."""

    code = "CorruptRecord"

    def __init__(self, line_number: int, message: str = ""):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}" if message else f"line {line_number}")


class ProtocolViolation(GestureQuadError):
    """Malformed or out-of-contract wire message; closes the connection."""

    code = "ProtocolViolation"

    def __init__(self, reason: str, message: str = ""):
        self.reason = reason
        super().__init__(message or reason)


class OutOfRangeAnswer(GestureQuadError):
    code = "OutOfRangeAnswer"


class WrongItemCount(GestureQuadError):
    code = "WrongItemCount"


class InsufficientData(GestureQuadError):
    code = "InsufficientData"


class EmptyDataset(GestureQuadError):
    code = "EmptyDataset"
