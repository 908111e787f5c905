"""Price history loading and validation"""

from .csv_loader import PriceHistoryLoader
from .data_validator import PriceHistoryValidator

__all__ = ["PriceHistoryLoader", "PriceHistoryValidator"]
