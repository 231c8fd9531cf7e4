"""Exception hierarchy shared by every module in the package."""


class PairdiffError(Exception):
    """Base class for all errors raised by pairdiff."""


class EmptyInput(PairdiffError, ValueError):
    pass


class InvalidRecord(PairdiffError, ValueError):
    """A record has a nonfinite field or a nonpositive weight."""

    def __init__(self, index, reason):
        self.index = index
        self.reason = reason
        super().__init__(f"record {index}: {reason}")


class InvalidBinCount(PairdiffError, ValueError):
    pass


class DegenerateRange(PairdiffError, ValueError):
    pass


class InvalidLattice(PairdiffError, ValueError):
    pass


class InvalidIndex(PairdiffError, ValueError):
    pass


class OutOfRange(PairdiffError, ValueError):
    pass


class InvalidSpec(PairdiffError, ValueError):
    pass


class SchemaError(PairdiffError, ValueError):
    pass


class IoError(PairdiffError, OSError):
    pass
