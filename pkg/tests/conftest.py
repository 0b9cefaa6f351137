import math

import numpy as np
import pytest
from scipy import integrate

from bergcauchy.domains import IDENTITY, make_map
from bergcauchy.quadrature import build_rule


@pytest.fixture(scope="session")
def rule():
    return build_rule(64, 128)


@pytest.fixture(scope="session")
def quad03():
    return make_map("interior", [0, 1, 0.3], name="quad03")


@pytest.fixture(scope="session")
def cubic025():
    return make_map("interior", [0, 1, 0, 0.25], name="cubic025")


@pytest.fixture(scope="session")
def identity():
    return IDENTITY


@pytest.fixture(params=range(5))
def rng(request):
    return np.random.default_rng(request.param)


def polar_oracle(f, r0=0.0, r1=1.0, epsabs=1e-13, epsrel=1e-13):
    """Adaptive scipy integral of complex ``f(z)`` over the annulus r0 < |z| < r1."""

    def part(fn):
        return integrate.dblquad(
            lambda t, r: fn(r * np.exp(1j * t)) * r, r0, r1, 0.0, 2 * math.pi, epsabs=epsabs, epsrel=epsrel
        )[0]

    return complex(part(lambda z: complex(f(z)).real), part(lambda z: complex(f(z)).imag))
