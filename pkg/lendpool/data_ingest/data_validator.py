"""
Price History Validator
Validates closing-price series before parameter estimation
"""

import logging
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


class PriceHistoryValidator:
    """Validates date/close data for integrity"""

    @staticmethod
    def validate_history(df: pd.DataFrame) -> Tuple[bool, List[str]]:
        """
        Validate a closing-price history

        Checks:
        - Required columns present
        - No missing values
        - Closes strictly positive
        - Dates strictly ascending

        Args:
            df: DataFrame with date and close columns

        Returns:
            Tuple of (is_valid, list of error messages)
        """
        errors = []

        missing_cols = [col for col in ("date", "close") if col not in df.columns]
        if missing_cols:
            errors.append(f"Missing columns: {missing_cols}")
            return False, errors

        for col in ("date", "close"):
            na_count = int(df[col].isna().sum())
            if na_count:
                errors.append(f"Column '{col}' has {na_count} missing values")

        non_positive = df[df["close"] <= 0]
        if len(non_positive) > 0:
            errors.append(f"{len(non_positive)} rows with non-positive close")

        dates = pd.Series(df["date"]).dropna()
        if not dates.is_monotonic_increasing:
            errors.append("Dates are not in ascending order")
        elif dates.duplicated().any():
            errors.append(f"{int(dates.duplicated().sum())} duplicated dates")

        is_valid = len(errors) == 0
        return is_valid, errors

    @staticmethod
    def check_outliers(df: pd.DataFrame, std_threshold: float = 5.0) -> pd.DataFrame:
        """
        Rows whose log return is more than std_threshold standard deviations
        from the mean
        """
        if len(df) < 3:
            return df.iloc[0:0]

        returns = np.log(df["close"]).diff()
        outliers = df[np.abs(returns - returns.mean()) > std_threshold * returns.std()]

        if len(outliers) > 0:
            logger.warning(f"Found {len(outliers)} log-return outliers")

        return outliers

    @staticmethod
    def summarize_history(df: pd.DataFrame) -> Dict:
        """Summary statistics of a loaded history (date-indexed close column)"""
        if df.empty:
            return {}

        return {
            "total_closes": len(df),
            "date_range": {"start": df.index[0], "end": df.index[-1]},
            "price_range": {
                "min": float(df["close"].min()),
                "max": float(df["close"].max()),
                "last": float(df["close"].iloc[-1]),
            },
        }
