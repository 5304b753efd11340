"""Exception hierarchy.

The CLI maps these onto exit codes: parse errors -> 2, refusals and failed
preconditions -> 3, verification failures (bugs) -> 4.
"""


class HurwitzAlexError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HurwitzAlexError, ValueError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class InvalidPresentation(HurwitzAlexError, ValueError):
    pass


class UnknownBuiltin(HurwitzAlexError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown builtin"


class NotRootsOfUnity(HurwitzAlexError, ValueError):
    pass


class NotMonic(HurwitzAlexError, ValueError):
    pass


class MapIllDefined(HurwitzAlexError, ValueError):
    pass


class NoCentralPower(HurwitzAlexError, ValueError):
    pass


class NotInvolution(HurwitzAlexError, ValueError):
    pass


class Refusal(HurwitzAlexError):
    """An input the constructions cannot (or provably must not) handle."""

    def __init__(self, message, condition=None):
        self.condition = condition
        super().__init__(message)


class PreconditionFailed(Refusal):
    pass


class NotRealizable(Refusal):
    """Theorem-backed refusal: no Hurwitz C-group has this polynomial."""


class GeneratorCeilingExceeded(PreconditionFailed):
    pass


class VerificationFailed(HurwitzAlexError):
    """A construction produced something other than its target. Always a bug."""
