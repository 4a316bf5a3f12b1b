# tests/conftest.py
import random

import pytest

from weylzhu.fock_module import FockVector, fock_basis
from weylzhu.weight_modules import Family, WeightModuleSpec


@pytest.fixture
def rng():
    return random.Random(1729)


@pytest.fixture(scope="session")
def small_basis():
    """Basis vectors of the weight <= 3 part with at most one a*_0."""
    return [FockVector.basis(mono) for mono in fock_basis(3, max_zero_modes=1)]


@pytest.fixture
def w0_plus():
    return WeightModuleSpec(Family.W0_PLUS, window=6)


@pytest.fixture
def w0_minus():
    return WeightModuleSpec(Family.W0_MINUS, window=6)


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("WEYLZHU_CONFIG", "WEYLZHU_OUTPUT_DIR", "WEYLZHU_LOG_DIR"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch
