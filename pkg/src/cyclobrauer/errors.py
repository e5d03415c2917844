"""Exception types shared across the package."""


class CycloBrauerError(Exception):
    """Base class for every error raised by this package."""


class NotAMatching(CycloBrauerError):
    pass


class BadLabel(CycloBrauerError):
    pass


class SizeMismatch(CycloBrauerError):
    pass


class BadModulus(CycloBrauerError):
    pass


class ContextMismatch(CycloBrauerError):
    pass


class MissingAssignment(CycloBrauerError):
    pass


class IndexOutOfRange(CycloBrauerError):
    pass


class DimensionMismatch(CycloBrauerError):
    pass


class BadSpec(CycloBrauerError):
    pass


class InvariantViolation(CycloBrauerError):
    """A construction-time identity failed; ``check`` names which one."""

    def __init__(self, check, detail=""):
        self.check = check
        msg = check if not detail else "%s: %s" % (check, detail)
        super().__init__(msg)


class NotScalarMultiple(CycloBrauerError):
    pass


class ParseError(CycloBrauerError):
    pass
