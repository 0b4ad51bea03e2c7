"""Regenerate the frozen regression fixtures.

Run from the repository root:  python tests/data/make_fixtures.py

The Riesz-potential fixture is cross-checked against the dense spatial
reference before being written; regenerate only after an intentional
numerical change, and re-run the suite afterwards.
"""

import pathlib

import numpy as np

from frftkit import amplitude_map, frft_2d, normalize, riesz_potential, riesz_potential_spatial_oracle, synth_test_image

HERE = pathlib.Path(__file__).parent


def gaussian(n, sigma_samples):
    x = (np.arange(n) - n // 2) / np.sqrt(n)
    s = sigma_samples / np.sqrt(n)
    return np.exp(-(x[None, :] ** 2 + x[:, None] ** 2) / (2 * s * s)).astype(complex)


def main():
    order = (np.pi / 4, np.pi / 4)
    f = gaussian(32, 4)
    out = riesz_potential(f, order, 1.0, oversample=8)
    oracle = riesz_potential_spatial_oracle(f, order, 1.0)
    gap = np.linalg.norm(out - oracle) / np.linalg.norm(oracle)
    if gap > 0.1:
        raise SystemExit(f"refusing to freeze: multiplier/oracle gap {gap:.3f} > 0.1")
    np.savez_compressed(HERE / "riesz_multiplier_32.npz", output=out)
    print(f"froze riesz_multiplier_32.npz (oracle gap {gap:.4f})")

    amp = amplitude_map(frft_2d(normalize(synth_test_image(32)), (np.pi / 2, np.pi / 2)))
    np.save(HERE / "dft_amplitude_32.npy", amp.pixels)
    print("froze dft_amplitude_32.npy")


if __name__ == "__main__":
    main()
