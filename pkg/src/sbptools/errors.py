class AlgebraError(ValueError):
    """Base class for structural errors raised by sbptools."""


class DimensionMismatch(AlgebraError):
    pass


class NotClosed(AlgebraError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAssociative(AlgebraError):
    pass


class NotUnital(AlgebraError):
    pass


class NotAGroup(AlgebraError):
    pass


class NotSurjective(AlgebraError):
    pass


class NotASection(AlgebraError):
    pass


class OrderTooLarge(AlgebraError):
    pass
