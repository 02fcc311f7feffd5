"""Exception types shared across the package.

The CLI maps these onto process exit codes: parse failures exit 2,
validation failures exit 3, size-limit refusals exit 4.
"""

from __future__ import annotations


class LsqtError(Exception):
    """Base class for all package errors."""


class EdgeListParseError(LsqtError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class EmptyGraphError(LsqtError):
    """Input contained no usable edges."""


class NotConnectedError(LsqtError):
    """Operation requires a connected graph (or same-component vertices)."""


class NotATreeEdgeError(LsqtError):
    """A backbone (tree) edge was required."""


class NotARemainderEdgeError(LsqtError):
    """A remainder (non-tree) edge was required."""


class SizeLimitError(LsqtError):
    """Refused: input too large for an exhaustive computation."""


class SceneValidationError(LsqtError):
    """A scene file failed internal-consistency checks."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems
