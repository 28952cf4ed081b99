"""Exception hierarchy shared by every layer of the analyzer.

Each class carries a stable machine-readable ``code``; the CLI maps codes
to exit statuses (input errors vs resource limits).
"""

from __future__ import annotations


class AnalysisError(Exception):
    """Base class for all analyzer errors."""

    code = "E_ERROR"

    def __init__(self, message: str, *, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ParseError(AnalysisError):
    code = "E_PARSE"


class DeclarationError(AnalysisError):
    """A name is undeclared, duplicated, or not a legal identifier."""

    code = "E_UNDECLARED"


class SelfReferenceError(AnalysisError):
    """An assignment's right-hand side mentions the assigned variable."""

    code = "E_SELF_REF"


class GraphError(AnalysisError):
    code = "E_GRAPH"

    def __init__(self, message: str, *, line: int | None = None, node: int | None = None):
        super().__init__(message, line=line)
        self.node = node


class UniverseMismatchError(AnalysisError):
    """Two values built over different term universes were combined."""

    code = "E_UNIVERSE"


class IterationLimitError(AnalysisError):
    code = "E_ITER_LIMIT"


class PathLimitError(AnalysisError):
    code = "E_PATH_LIMIT"
