import numpy as np
import pytest

import spectrad as sp


@pytest.fixture
def j2():
    """The 2x2 nilpotent Jordan block."""
    return np.array([[0, 1], [0, 0]], dtype=complex)


@pytest.fixture
def unipotent2():
    return np.array([[1, 1], [0, 1]], dtype=complex)


@pytest.fixture
def normal_diag():
    return np.diag([2j, 1.0 + 0j])


def ginibre(n, seed):
    return sp.generate(sp.EnsembleSpec(kind="ginibre", dim=n, seed=seed))


def haar_unitary(n, seed):
    return sp.generate(sp.EnsembleSpec(kind="unitary_random", dim=n, seed=seed))


def random_normal_matrix(n, seed):
    return sp.generate(sp.EnsembleSpec(kind="normal_random", dim=n, seed=seed))
