"""
Tokens and token maps
Free tokens, minted tokens and the point-wise update f ∘ v : τ
"""

import math
import operator
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, Mapping, Optional

from .errors import NonPositiveAmount, UndefinedResult

# Relative tolerance used by every equality/ordering check on amounts
REL_TOL = 1e-9
ABS_TOL = 1e-12

AgentId = str
BinaryOp = Callable[[float, float], float]


def approx_eq(a: float, b: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=ABS_TOL)


def approx_le(a: float, b: float) -> bool:
    return a <= b or approx_eq(a, b)


def approx_lt(a: float, b: float) -> bool:
    return a < b and not approx_eq(a, b)


class TokenClass(Enum):
    FREE = "free"
    MINTED = "minted"


@dataclass(frozen=True)
class TokenId:
    """
    Cryptoasset identifier

    A minted token carries the free token it is redeemable for.
    """

    symbol: str
    token_class: TokenClass = TokenClass.FREE
    underlying: Optional["TokenId"] = None

    def __post_init__(self):
        if self.token_class is TokenClass.MINTED:
            if self.underlying is None or self.underlying.token_class is not TokenClass.FREE:
                raise ValueError(f"Minted token {self.symbol} needs a free underlying token")
        elif self.underlying is not None:
            raise ValueError(f"Free token {self.symbol} cannot have an underlying token")

    @classmethod
    def free(cls, symbol: str) -> "TokenId":
        return cls(symbol)

    @property
    def is_minted(self) -> bool:
        return self.token_class is TokenClass.MINTED

    def minted(self) -> "TokenId":
        """The minted counterpart the pool issues for this free token"""
        if self.is_minted:
            raise ValueError(f"{self.symbol} is already a minted token")
        return TokenId(f"{self.symbol}'", TokenClass.MINTED, self)

    def __str__(self) -> str:
        return self.symbol


def token_key(tau: TokenId) -> str:
    """Sort key giving the deterministic TokenId order"""
    return tau.symbol


class TokenMap(Mapping[TokenId, float]):
    """
    Immutable partial map from tokens to non-negative amounts

    Absent keys read as 0 through amount(), but absence is kept: the
    point-wise update inserts rather than combines when the key is missing.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Optional[Mapping[TokenId, float]] = None):
        data: Dict[TokenId, float] = dict(entries or {})
        for tau, value in data.items():
            if value < 0:
                raise UndefinedResult(f"Negative amount {value} for {tau}")
        self._entries = data

    def __getitem__(self, tau: TokenId) -> float:
        return self._entries[tau]

    def __iter__(self) -> Iterator[TokenId]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        body = ", ".join(f"{tau}: {value:g}" for tau, value in self._entries.items())
        return f"TokenMap({{{body}}})"

    def amount(self, tau: TokenId) -> float:
        return self._entries.get(tau, 0.0)

    def credit(self, tau: TokenId, v: float) -> "TokenMap":
        return map_apply(self, operator.add, v, tau)

    def debit(self, tau: TokenId, v: float) -> "TokenMap":
        if tau not in self._entries:
            if v > 0:
                raise UndefinedResult(f"Cannot debit {v} of absent {tau}")
            return self
        # Amounts equal to the balance within tolerance clear it exactly
        if approx_eq(self._entries[tau], v):
            v = self._entries[tau]
        return map_apply(self, operator.sub, v, tau)

    def scaled(self, factor: float) -> "TokenMap":
        return TokenMap({tau: value * factor for tau, value in self._entries.items()})

    def total(self) -> float:
        return math.fsum(self._entries.values())


def map_apply(f: TokenMap, op: BinaryOp, v: float, tau: TokenId) -> TokenMap:
    """
    Point-wise update of a token map at tau

    Args:
        f: Map to update
        op: Binary operation on reals (operator.add, operator.sub, ...)
        v: Non-negative amount
        tau: Token to update

    Returns:
        New map; f(tau) op v when tau is in the domain, otherwise f
        extended with tau -> v

    Raises:
        UndefinedResult: if f(tau) op v is negative
    """
    if v < 0:
        raise NonPositiveAmount(f"Amount must be non-negative, got {v}")

    entries = dict(f.items())
    if tau in entries:
        result = op(entries[tau], v)
        if result < 0:
            raise UndefinedResult(f"{tau}: {entries[tau]} -> {result} is negative")
        entries[tau] = result
    else:
        entries[tau] = v
    return TokenMap(entries)
