class SchubertError(ValueError):
    """Base class for invalid shapes, indices, points and order relations."""


class ShapeMismatchError(SchubertError):
    pass


class BruhatOrderError(SchubertError):
    pass


class PointNotInCellError(SchubertError):
    pass


class MembershipError(SchubertError):
    """A point does not lie on the variety it was given for."""


class MultiplicityMismatch(SchubertError):
    """Two computations of the same multiplicity disagree."""


class BudgetExceeded(SchubertError):
    pass


class QuadricError(SchubertError):
    pass
