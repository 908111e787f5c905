"""
CSV Price History Loader
Loads daily closing prices used to estimate GBM parameters
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, Optional, Union

import pandas as pd

from ..core.errors import ParseError, ValidationError
from .data_validator import PriceHistoryValidator

logger = logging.getLogger(__name__)


class PriceHistoryLoader:
    """
    Loads closing-price histories from CSV files

    Expected CSV format:
    date,close
    2018-01-13,1385.02
    """

    def __init__(self, data_dir: Union[str, Path] = ".", date_format: str = "%Y-%m-%d"):
        """
        Initialize loader

        Args:
            data_dir: Directory that relative paths and symbols resolve against
            date_format: Date format in CSV files (ISO-8601 by default)
        """
        self.data_dir = Path(data_dir)
        self.date_format = date_format

        logger.info(f"Price history loader initialized with data_dir={self.data_dir}")

    def resolve(self, path: Union[str, Path]) -> Path:
        """Absolute paths and existing relative paths as given, else under data_dir"""
        path = Path(path)
        if path.is_absolute() or path.exists():
            return path
        return self.data_dir / path

    def load(self, path: Union[str, Path]) -> pd.DataFrame:
        """
        Load and validate one `date,close` CSV

        Args:
            path: CSV path, absolute or relative to data_dir

        Returns:
            DataFrame indexed by date with a float close column

        Raises:
            FileNotFoundError: if the file is missing
            ParseError: if dates or closes cannot be parsed
            ValidationError: if the history breaks a data rule
        """
        file_path = self.resolve(path)
        if not file_path.exists():
            raise FileNotFoundError(f"Price history not found: {file_path}")

        try:
            df = pd.read_csv(file_path)
            df["date"] = pd.to_datetime(df["date"], format=self.date_format)
            df["close"] = pd.to_numeric(df["close"], errors="raise").astype(float)
        except KeyError as e:
            raise ParseError(f"{file_path}: missing column {e}") from e
        except (ValueError, TypeError) as e:
            raise ParseError(f"{file_path}: {e}") from e

        is_valid, errors = PriceHistoryValidator.validate_history(df)
        if not is_valid:
            raise ValidationError([f"{file_path}: {error}" for error in errors])

        df = df.set_index("date")[["close"]]
        logger.info(f"Loaded {len(df)} closes from {file_path}")
        return df

    def load_symbol(self, symbol: str) -> pd.DataFrame:
        """Load `<data_dir>/<symbol>.csv`"""
        return self.load(f"{symbol}.csv")

    def load_all(
        self,
        paths: Dict[str, Union[str, Path]],
        symbols: Optional[Iterable[str]] = None,
    ) -> Dict[str, pd.DataFrame]:
        """
        Load histories for several assets

        Args:
            paths: Asset symbol -> CSV path
            symbols: Subset of symbols to load (default: all)

        Returns:
            Dictionary mapping symbol to DataFrame
        """
        wanted = list(symbols) if symbols is not None else list(paths)
        data = {symbol: self.load(paths[symbol]) for symbol in wanted}
        logger.info(f"Loaded price histories for {len(data)} assets")
        return data
