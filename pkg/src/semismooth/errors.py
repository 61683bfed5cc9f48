"""Exception types shared across the package."""

from __future__ import annotations


class SemismoothError(Exception):
    """Base class for all package errors."""


class ParseError(SemismoothError):
    """Raised on malformed polynomial input; carries the offset of the bad token."""

    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos} in {text!r}")


class InputError(SemismoothError):
    """Semantically invalid input (unknown variable, mismatched rings, bad datum)."""


class PreconditionError(InputError):
    """An operation's precondition failed on otherwise well-formed input.

    failure_class is a stable machine-readable tag used in reports.
    """

    def __init__(self, failure_class: str, message: str):
        self.failure_class = failure_class
        super().__init__(f"{failure_class}: {message}")


class ResourceLimitError(SemismoothError):
    """The global reduction-step budget was exhausted."""


class CompletenessError(SemismoothError):
    """A bounded search ended without certifying completeness.

    witness holds a printable representation of the offending element.
    """

    def __init__(self, message: str, witness: str):
        self.witness = witness
        super().__init__(f"{message} (witness: {witness})")
