import pytest

from lendpool.core import LpState
from lendpool.scenario.running_example import running_example_state


@pytest.fixture
def gamma0() -> LpState:
    """Initial state of the three-borrower running example"""
    return running_example_state()
