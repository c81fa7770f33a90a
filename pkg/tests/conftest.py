import numpy as np
import pytest

from conformal_rigidity import load_fixture


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def c4():
    return load_fixture("c4")


@pytest.fixture
def petersen():
    return load_fixture("petersen")


@pytest.fixture
def prism():
    return load_fixture("prism")


@pytest.fixture
def hoffman():
    return load_fixture("hoffman")
