import numpy as np
import pytest

ALL_FAMILIES = [
    "legendre",
    "chebyshev_t",
    "chebyshev_u",
    "gegenbauer(1)",
    "jacobi(0.5,-0.25)",
    "hermite",
    "laguerre",
    "herron",
]

CLOSED_MOMENT_FAMILIES = [
    "legendre",
    "chebyshev_t",
    "chebyshev_u",
    "hermite",
    "laguerre",
    "herron",
]


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240901)
