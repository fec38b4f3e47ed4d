"""Exception types raised by solvagraph."""


class SolvagraphError(Exception):
    pass


class CapExceeded(SolvagraphError):
    def __init__(self, cap: int, what: str = "group closure"):
        super().__init__(f"{what} exceeds the order cap of {cap}")
        self.cap = cap


class IncompatibleElements(SolvagraphError, ValueError):
    pass


class SingularMatrix(SolvagraphError, ValueError):
    pass


class NotASubgroup(SolvagraphError, ValueError):
    pass


class NotNormal(SolvagraphError, ValueError):
    pass


class EmptyGraph(SolvagraphError, ValueError):
    pass


class UnsupportedFormat(SolvagraphError, ValueError):
    pass


class BadParams(SolvagraphError, ValueError):
    pass


class OutOfRange(SolvagraphError, ValueError):
    pass


class ElementNotInGroup(SolvagraphError, ValueError):
    pass


class NotFound(SolvagraphError):
    pass


class ParseError(SolvagraphError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
