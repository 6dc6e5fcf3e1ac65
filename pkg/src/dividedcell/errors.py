"""Exception hierarchy shared by every module of the package."""


class DividedCellError(Exception):
    """Base class for all errors raised by dividedcell."""


class FieldMismatch(DividedCellError):
    """Operands live in different quadratic fields."""


class DivByZero(DividedCellError, ZeroDivisionError):
    pass


class SurdSyntaxError(DividedCellError, ValueError):
    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class NotIndefinite(DividedCellError, ValueError):
    pass


class Degenerate(DividedCellError):
    """A lattice direction lies on an axis; the form represents zero.

    ``point`` is a nonzero lattice vector on the offending axis when known.
    """

    def __init__(self, message, point=None):
        self.point = point
        super().__init__(message)


class Terminated(DividedCellError):
    """A chain step is impossible because a cell side is parallel to an axis."""


class AxisParallel(DividedCellError):
    pass


class NotReduced(DividedCellError):
    pass


class NotGaussian(DividedCellError):
    pass


class NotSuperfluous(DividedCellError):
    pass


class Diverged(DividedCellError):
    pass


class Mismatch(DividedCellError):
    pass


class Unbounded(DividedCellError):
    pass


class EmptyScene(DividedCellError):
    pass


class BadPreset(DividedCellError, ValueError):
    pass


class SchemaError(DividedCellError, ValueError):
    def __init__(self, message, pointer=""):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")
