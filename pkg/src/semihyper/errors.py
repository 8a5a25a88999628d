"""Exception hierarchy shared by all modules.

Indices carried by exceptions are 1-based, matching the file formats.
"""


class SemihyperError(ValueError):
    """Base class for every domain error raised by the package."""


# cube construction


class ShapeMismatch(SemihyperError):
    pass


class NegativeCoefficient(SemihyperError):
    def __init__(self, i, j, k, value):
        self.i, self.j, self.k, self.value = i, j, k, value
        super().__init__(f"negative coefficient a_{{{i},{j}}}({k}) = {value}")


class NotNormalized(SemihyperError):
    def __init__(self, i, j, actual_sum):
        self.i, self.j, self.actual_sum = i, j, actual_sum
        super().__init__(f"column a_{{{i},{j}}} sums to {actual_sum}, expected 1")


class IndexOutOfRange(SemihyperError, IndexError):
    pass


class LengthMismatch(SemihyperError):
    pass


class InvalidMeasure(SemihyperError):
    pass


class InvalidMatrix(SemihyperError):
    pass


# groups


class NotLatinSquare(SemihyperError):
    def __init__(self, kind, index, detail=""):
        self.kind, self.index = kind, index
        msg = f"{kind} {index} is not a permutation of 1..n"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NotAssociative(SemihyperError):
    def __init__(self, i, j, k, detail=""):
        self.i, self.j, self.k = i, j, k
        msg = f"associativity fails at ({i}, {j}, {k})"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class UnsupportedOrder(SemihyperError):
    pass


class UnknownGroup(SemihyperError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class OrderMismatch(SemihyperError):
    pass


# recovery


class NotDerivable(SemihyperError):
    """The cube could not be certified as derived from a group."""


class SingularA1(NotDerivable):
    pass


class NotPermutation(NotDerivable):
    def __init__(self, i):
        self.i = i
        super().__init__(f"A_{i} A_1^-1 is not a permutation matrix")


class NotClosed(NotDerivable):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"P_{i} P_{j} is not among the quotient matrices")


class SizeMismatch(SemihyperError):
    pass


# streams


class BadStart(SemihyperError):
    pass


class BadLength(SemihyperError):
    pass


class EmptyStream(SemihyperError):
    pass
