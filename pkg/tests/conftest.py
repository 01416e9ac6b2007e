import numpy as np
import pytest

from wfamin.wfa import Wfa


@pytest.fixture
def geometric_wfa():
    """One state, one letter: f(k) = 0.5**k."""
    return Wfa([1.0], [[[0.5]]], [1.0])


@pytest.fixture
def two_state_wfa():
    """Two states, one letter, diagonal transitions 0.5 and -0.3."""
    return Wfa([1.0, 1.0], [np.diag([0.5, -0.3])], [1.0, 1.0])


@pytest.fixture
def nilpotent_wfa():
    """Two letters; realizes the indicator of the language a b*."""
    return Wfa(
        [1.0, 0.0],
        [np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([[0.0, 0.0], [0.0, 1.0]])],
        [0.0, 1.0],
    )
