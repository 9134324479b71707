class SpecmateError(Exception):
    """Base class for all errors raised by specmate."""


class Graph6Error(SpecmateError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"graph6 byte {offset}: {message}")
        self.offset = offset


class GraphFormatError(SpecmateError, ValueError):
    pass


class NotPrimeError(SpecmateError, ValueError):
    pass


class ModulusMismatchError(SpecmateError, ValueError):
    pass


class PreconditionError(SpecmateError, ValueError):
    pass


class SolutionOverflowError(SpecmateError):
    """Raised when an enumeration would exceed the complexity cap."""

    def __init__(self, stage: str, count: int, cap: int, prime: int | None = None):
        where = f" for p={prime}" if prime is not None else ""
        super().__init__(f"{stage} solution count {count}{where} exceeds cap {cap}")
        self.stage = stage
        self.count = count
        self.cap = cap
        self.prime = prime


class InternalInconsistencyError(SpecmateError, RuntimeError):
    pass
