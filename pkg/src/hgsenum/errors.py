"""Exception types raised across the package."""


class HgsError(Exception):
    """Base class for all errors raised by hgsenum."""


class CapExceeded(HgsError):
    """A materialisation grew past its configured cap."""

    def __init__(self, what, cap):
        super().__init__(f"{what} exceeded cap {cap}")
        self.what = what
        self.cap = cap


class NotSubgroup(HgsError):
    pass


class NotSoluble(HgsError):
    pass


class CoreNotTrivial(HgsError):
    pass


class NotSquarefree(HgsError):
    pass


class NotSophieGermain(HgsError):
    pass


class NotInHolomorph(HgsError):
    pass


class NonIntegerCount(HgsError):
    pass


class BadDegree(HgsError):
    pass


class DegreeTooLarge(HgsError):
    pass
