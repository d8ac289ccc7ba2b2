"""Shared fixtures for the W(m,n) engine tests."""

import numpy as np
import pytest

from app.services.superalg import Context
from app.services.vfields import Algebra, AlgebraKind


@pytest.fixture
def rng():
    return np.random.default_rng(11)


@pytest.fixture
def ctx11():
    return Context(1, 1, 1)


@pytest.fixture
def ctx12():
    return Context(1, 2, 1)


@pytest.fixture
def w10():
    return Algebra(AlgebraKind.WMN, 1, 0)


@pytest.fixture
def w11():
    return Algebra(AlgebraKind.WMN, 1, 1)


@pytest.fixture
def w21():
    return Algebra(AlgebraKind.WM1N, 1, 1)
