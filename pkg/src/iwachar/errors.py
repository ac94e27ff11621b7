"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front end can map
failures onto its documented exit statuses without a lookup table.
"""


class IwasawaError(Exception):
    exit_code = 1


class InvalidInput(IwasawaError, ValueError):
    exit_code = 1


class PrimeMismatch(InvalidInput):
    pass


class MissingData(IwasawaError):
    exit_code = 2


class ArithmeticObstruction(IwasawaError, ArithmeticError):
    exit_code = 3


class NotAUnit(ArithmeticObstruction):
    pass


class NotDivisible(ArithmeticObstruction):
    pass


class NegativeResidual(ArithmeticObstruction):
    pass


class NegativeDifference(ArithmeticObstruction):
    pass


class TorsionViolation(ArithmeticObstruction):
    pass


class InsufficientPrecision(IwasawaError):
    exit_code = 4


class IndeterminateOrder(InsufficientPrecision):
    pass


class DegreeCapExceeded(InsufficientPrecision):
    pass
