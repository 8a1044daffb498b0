import math

import pytest
from scipy.special import gammaln

from hgl import HermiteSeries


@pytest.fixture
def ground_state():
    return HermiteSeries(dimension=1, max_degree=0, coefficients={(0,): 1.0})


def beurling_series(sigma: float, max_degree: int = 80) -> HermiteSeries:
    """c_k = k!^{-1/(2 sigma) - 0.2}: decays faster than every flat-scale
    radius at this sigma, so both routes must report the universal flavor."""
    coeffs = {}
    for k in range(max_degree + 1):
        log_c = -(1.0 / (2.0 * sigma) + 0.2) * gammaln(k + 1)
        if log_c > -700.0:
            coeffs[(k,)] = math.exp(log_c)
    return HermiteSeries(dimension=1, max_degree=max_degree, coefficients=coeffs)


SIGMA_GRID = (0.5, 1.0, 2.0)
RADIUS_GRID = (0.5, 1.0, 2.0)
