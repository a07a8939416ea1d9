"""Exception hierarchy shared by all modules."""


class RealOrbitsError(Exception):
    """Base class for every error raised by this package."""


class AmbientMismatch(RealOrbitsError, ValueError):
    """Two values from different torsion groups were combined."""


class LimitExceeded(RealOrbitsError):
    """An enumeration would exceed the configured element limit."""


class RankLimit(LimitExceeded):
    """A built-in family was requested above the configured rank limit."""


class InvalidFamily(RealOrbitsError, ValueError):
    pass


class NotASubgroup(RealOrbitsError, ValueError):
    pass


class NotAState(RealOrbitsError, ValueError):
    pass


class ValidationFailed(RealOrbitsError):
    def __init__(self, report):
        self.report = report
        super().__init__("action failed validation:\n" + report.summary())


class ParseError(RealOrbitsError, ValueError):
    def __init__(self, message, *, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class InternalError(RealOrbitsError):
    """An invariant that should hold by construction was violated."""
