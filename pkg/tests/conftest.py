import numpy as np
import pytest

from fracwave.grid import Domain
from fracwave.verify import random_field


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def unit_domain():
    """[-pi, pi] with N=4, the smallest grid the worked examples use."""
    return Domain.periodic(-np.pi, 2.0 * np.pi, 4, 16)


@pytest.fixture
def wide_domain():
    """[0, 50] with N=16, a scaled domain matching the experiment geometry."""
    return Domain.periodic(0.0, 50.0, 16)


def make_field(domain, rng, **kw):
    return random_field(domain, rng, **kw)
