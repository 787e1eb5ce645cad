import numpy as np
import pytest

from hqz import QuadratureSpec


@pytest.fixture(scope="session")
def q() -> QuadratureSpec:
    """Default quadrature policy used by most tests."""
    return QuadratureSpec()


@pytest.fixture(scope="session")
def q_fast() -> QuadratureSpec:
    """Lighter policy for corpus loops where 1e-8 accuracy suffices."""
    return QuadratureSpec(circle_nodes=256, radial_nodes=24,
                          refinement_limit=10, abs_tol=1e-8)


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
