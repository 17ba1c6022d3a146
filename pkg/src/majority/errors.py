"""Exception types shared across the package."""


class InvalidParameters(ValueError):
    """Raised when (n, k, ...) fall outside an operation's preconditions."""


class InconsistentAnswers(ValueError):
    """Raised when an answer vector cannot come from any coloring."""


class ResourceLimit(RuntimeError):
    """A search hit its configured budget before finishing.

    ``bracket`` holds the best known (lower, upper) interval for the quantity
    being searched, with ``None`` standing for an unknown side.
    """

    def __init__(self, message, bracket=(None, None)):
        super().__init__(message)
        self.bracket = bracket
