import numpy as np
import pytest

from frftkit import EncryptionKey


def gaussian_grid(n: int, sigma_samples: float, dtype=complex) -> np.ndarray:
    """Centered isotropic Gaussian with the given width in samples."""
    x = (np.arange(n) - n // 2) / np.sqrt(n)
    sig = sigma_samples / np.sqrt(n)
    g = np.exp(-(x[None, :] ** 2 + x[:, None] ** 2) / (2.0 * sig * sig))
    return g.astype(dtype)


def rel_l2(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


@pytest.fixture
def table_key() -> EncryptionKey:
    """The reference correct key: alpha=(7pi/8, 5pi/8), beta=0.75, gamma=(pi/4, 3pi/8)."""
    return EncryptionKey(
        alpha=(7 * np.pi / 8, 5 * np.pi / 8),
        gamma=(np.pi / 4, 3 * np.pi / 8),
        beta=0.75,
        seed1=112233445566778899,
        seed2=998877665544332211,
    )
