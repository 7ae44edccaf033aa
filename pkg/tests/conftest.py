import numpy as np
import pytest

from nvgyro.params import FieldVector, NVParams


@pytest.fixture(scope="session")
def params() -> NVParams:
    return NVParams()


@pytest.fixture(scope="session")
def field() -> FieldVector:
    return FieldVector(239.0, 0.0)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


def random_hermitian(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    return scale * 0.5 * (a + a.conj().T)
