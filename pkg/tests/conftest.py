"""Shared helpers for the test suite: seeded generators and random inputs."""

import numpy as np
import pytest

from perispec import BlockAlgebra, Tolerances

TEST_SEED = 987654321


def rng_for(*tags: int) -> np.random.Generator:
    """Independent deterministic stream per (test, purpose) tag tuple."""
    return np.random.default_rng([TEST_SEED, *tags])


def random_complex(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    g = random_complex(rng, n, n)
    return 0.5 * (g + g.conj().T)


def random_psd(rng: np.random.Generator, n: int) -> np.ndarray:
    g = random_complex(rng, n, n)
    return g @ g.conj().T


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(rng, n, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_element(algebra: BlockAlgebra, rng: np.random.Generator):
    return algebra.element([random_complex(rng, n, n) for n in algebra.blocks])


@pytest.fixture
def tol() -> Tolerances:
    return Tolerances()


@pytest.fixture
def mat2() -> BlockAlgebra:
    return BlockAlgebra((2,))


@pytest.fixture
def two_blocks() -> BlockAlgebra:
    return BlockAlgebra((2, 2))
