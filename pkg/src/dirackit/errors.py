"""Exception types shared across the toolkit."""


class DiracKitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(DiracKitError):
    """A literal could not be parsed.

    ``offset`` is the byte offset (UTF-8) into the literal where the problem
    was detected.
    """

    def __init__(self, message, text="", offset=0):
        self.message = message
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte {offset}" + (f" in {text!r}" if text else ""))


class PreconditionError(DiracKitError):
    """An operation's precondition does not hold; ``witness`` says why."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class SingularPointError(DiracKitError):
    """Evaluation at a point on the vanishing locus of a denominator."""
