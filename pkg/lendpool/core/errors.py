"""
Exception hierarchy
Every failure raised by the simulator derives from LendingPoolError
"""

from typing import List, Optional


class LendingPoolError(Exception):
    """Base class for all lending-pool simulator errors"""


# Transition rule failures ---------------------------------------------------

class TransitionError(LendingPoolError):
    """A transition rule rejected its input; the input state is untouched"""


class UndefinedResult(TransitionError):
    """A point-wise map update would leave the non-negative reals"""


class UnknownToken(TransitionError):
    pass


class UnknownAgent(TransitionError):
    pass


class NonPositiveAmount(TransitionError):
    pass


class InsufficientBalance(TransitionError):
    pass


class InsufficientPoolFunds(TransitionError):
    pass


class Undercollateralized(TransitionError):
    """Post-state collateralization would fall below CMin"""


class ExceedsLoan(TransitionError):
    pass


class NotMinted(TransitionError):
    pass


class ExceedsMaxLiq(TransitionError):
    pass


class InsufficientCollateralHeld(TransitionError):
    pass


class BorrowerSafe(TransitionError):
    """The borrower is not undercollateralized in the pre-state"""


class OverLiquidation(TransitionError):
    """The liquidation would push collateralization above CMin"""


class DomainMismatch(TransitionError):
    pass


class NonPositivePrice(TransitionError):
    pass


# Strategy failures ----------------------------------------------------------

class StrategyError(LendingPoolError):
    pass


class IllPosed(StrategyError):
    """Rliq * ER >= CMin, so no repay amount restores CMin"""


class NoRepayableLoan(StrategyError):
    pass


class InternalInconsistency(StrategyError):
    """A computed plan failed to execute against the state it came from"""


# Pricing failures -----------------------------------------------------------

class TooShort(LendingPoolError):
    pass


# Analysis failures ----------------------------------------------------------

class SimulationFault(LendingPoolError):
    pass


class InvalidGrid(LendingPoolError):
    pass


# Configuration failures -----------------------------------------------------

class ConfigInvalid(LendingPoolError):
    pass


class ParseError(ConfigInvalid):
    pass


class ValidationError(ConfigInvalid):
    """
    Configuration failed validation

    Args:
        errors: Field-level messages, one per violated rule
    """

    def __init__(self, errors: List[str], message: Optional[str] = None):
        self.errors = list(errors)
        super().__init__(message or "; ".join(self.errors))
