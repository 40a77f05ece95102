import numpy as np
import pytest

from fpinoise import FpiParams, SourceParams

# drive powers of the standard study; the linewidth follows as 3/(1+p)
SWEEP = (0.1, 1.5, 5.0, 50.0)


@pytest.fixture
def fpi():
    return FpiParams()  # kappa1 = kappa2 = 0.5, kappa0 = 0.1, delta = 5


@pytest.fixture
def sweep_sources():
    return tuple(SourceParams(p_in=p) for p in SWEEP)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
