"""Pytest configuration and shared fixtures."""

import os
import tempfile

import numpy as np
import pytest


def pytest_configure(config):
    """Configure pytest environment before tests run."""
    # Keep logs and config of test runs out of the real home directory
    os.environ["PHINMOD_HOME"] = tempfile.mkdtemp(prefix="phinmod-tests-")


@pytest.fixture(scope="session")
def field():
    """The default model field Q(2^(1/6))."""
    from src.phinmod.valued_field import make_field
    return make_field(2, 6)


@pytest.fixture
def rng():
    """A fixed-seed numpy generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def unit_basis_change(field):
    """An invertible integer matrix with a non-triangular inverse."""
    from src.phinmod.linalg import Matrix
    return Matrix(field, [[1, 1, 0], [0, 1, 1], [1, 0, 2]])


@pytest.fixture
def instance(field):
    """Build a FamilyInstance from plain rationals or field elements."""
    from src.phinmod.catalog import FamilyId, FamilyInstance
    from src.phinmod.module import HodgeType

    def build(family, eigen, fil=(), r=1, s=2):
        return FamilyInstance(
            FamilyId.parse(family),
            tuple(field.element(x) for x in eigen),
            tuple(field.element(x) for x in fil),
            HodgeType(r, s),
        )
    return build
