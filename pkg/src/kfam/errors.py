"""Error types shared across the workbench."""


class DomainError(ValueError):
    """A parameter is outside the domain an operation is defined on."""


class ScaleError(DomainError):
    """An exhaustive operation was asked to run beyond its supported scale."""


class ParseError(ValueError):
    """A family file could not be parsed; message carries the line number."""


class ExchangeError(RuntimeError):
    """A switching exchange was attempted with its hypotheses violated."""


class InvariantError(AssertionError):
    """An internal mathematical guarantee failed; indicates a bug."""
