"""Exception types shared across the library."""


class DaklError(Exception):
    pass


class StabilizationFailure(DaklError):
    """A windowed enumeration changed when the window was doubled."""

    def __init__(self, what, window):
        super().__init__(f"{what} did not stabilize at window {window}")
        self.window = window


class NotRealizable(DaklError):
    """An element could not be realized in the expected reflection group."""


class ConventionMismatch(DaklError):
    """An internal cross-check of two convention-sensitive computations failed.

    Raised loudly instead of patching silently; indicates a sign or
    orientation bug, never swallowed.
    """


class EquivalenceViolation(DaklError):
    """The two forms of the folding predicate disagreed."""


class InconsistentTimes(DaklError):
    """Fixed folding times of a chain are not monotone."""


class EmptyInterval(DaklError):
    """Requested interval [v, x] with v not below x."""


class NoSolution(DaklError):
    """The Kazhdan-Lusztig recursion has no solution under the degree bound."""


class ParseError(DaklError):
    def __init__(self, text, pos, expected):
        super().__init__(f"parse error at position {pos} in {text!r}: expected {expected}")
        self.pos = pos
        self.expected = expected
