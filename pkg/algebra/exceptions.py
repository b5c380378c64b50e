class AlgebraError(ValueError):
    """Base class for errors raised by the polynomial kernel."""


class ReservedVariableError(AlgebraError):
    pass


class NonHomogeneousError(AlgebraError):
    pass


class UnitIdealError(AlgebraError):
    """The ideal contains 1, so its variety is empty."""


class PointNotOnVarietyError(AlgebraError):
    pass
