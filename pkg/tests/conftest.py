import numpy as np
import pytest

from dunkl_lab import DunklLab
from dunkl_lab._rootsys import build_context, dihedral_root_system, z2_root_system


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(scope="session")
def z2_1():
    """Rank one, γ = 1."""
    return build_context(z2_root_system(1), 1.0)


@pytest.fixture(scope="session")
def z2_1_half():
    return build_context(z2_root_system(1), 0.5)


@pytest.fixture(scope="session")
def z2_2():
    """Z2^2 with α = (1, 1): c_k = 4/π, d_k = π/4."""
    return build_context(z2_root_system(2), [1.0, 1.0])


@pytest.fixture(scope="session")
def z2_2_mixed():
    return build_context(z2_root_system(2), [0.5, 1.5])


@pytest.fixture(scope="session")
def z2_3():
    return build_context(z2_root_system(3), [1.0, 0.5, 0.75])


@pytest.fixture(scope="session")
def dihedral_3():
    return build_context(dihedral_root_system(3), 1.0)


@pytest.fixture
def lab_1():
    return DunklLab(group="z2^1", alphas=1.0, show_progress=False, sampling={"seed": 0, "random_samples": 200})


@pytest.fixture
def lab_2():
    return DunklLab(group="z2^2", alphas=[1.0, 1.0], show_progress=False, sampling={"seed": 0, "random_samples": 200})
