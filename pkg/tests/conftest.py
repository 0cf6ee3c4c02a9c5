import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ellipcmr.domain import EllipticDomain


@pytest.fixture
def dom():
    """Working domain: ell = 2, p = 0.1."""
    return EllipticDomain.from_nome(2.0, 0.1)


@pytest.fixture
def dom_small_p():
    return EllipticDomain.from_nome(2.0, 0.05)


@pytest.fixture
def dom_trig():
    return EllipticDomain.from_nome(2.0, 0.0)
