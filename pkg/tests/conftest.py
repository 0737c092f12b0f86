import numpy as np
import pytest

from signlab import build_sieve

# silence the harmless TBB-version notice numba emits on import
import warnings
from numba.core.errors import NumbaWarning

warnings.filterwarnings("ignore", category=NumbaWarning)


@pytest.fixture(scope="session")
def table_1e5():
    return build_sieve(100_000 + 256)


@pytest.fixture(scope="session")
def table_1e6():
    return build_sieve(1_000_000 + 1024)


@pytest.fixture(scope="session")
def table_1e7():
    return build_sieve(10_000_000 + 1024)


def harmonic_oracle(n: int) -> float:
    """Independent H(n) via numpy pairwise summation."""
    return float(np.sum(1.0 / np.arange(1, n + 1, dtype=np.float64)))
