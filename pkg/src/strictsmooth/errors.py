"""Exception taxonomy shared by all modules.

Exit-code mapping used by the CLI: input problems (scene files, expressions,
guardrails) exit with 2, violated internal invariants exit with 3.
"""


class StrictSmoothError(Exception):
    pass


class StructuralError(StrictSmoothError):
    """Contract violation: mismatched variable counts, mixed fields, bad call."""


class ParseError(StrictSmoothError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SceneError(StrictSmoothError):
    """Invalid scene input (rejected before any analysis runs)."""


class DegreeLimitError(StrictSmoothError):
    """A Groebner run exceeded the configured degree guardrail."""


class InternalCheckError(StrictSmoothError):
    """An internal invariant failed; indicates a bug, never bad input."""
