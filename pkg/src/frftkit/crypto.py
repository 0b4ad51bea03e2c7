"""Double-phase-coding image encryption on the fractional Fourier transform.

Encryption of a normalized image z1 (values in [0, 1]):

    z2 = F_gamma[ m_beta . ( F_alpha( z1 . p1 ) ) . p2 ]

where p1, p2 are seeded unit-modulus random phase masks, m_beta is the
Riesz-potential amplitude symbol evaluated in the alpha-transform domain,
and F_gamma is a second transform of independent orders.  Decryption runs
the inverse chain and takes the final modulus:

    z3 = | F_{-alpha}[ (1/m_beta) . ( F_{-gamma} z2 ) . conj(p2) ] . conj(p1) |

The transforms are exactly unitary and the symbol pair are exact pointwise
reciprocals (shared zero-bin policy), so a correct key recovers the image to
rounding.  The key is (alpha, gamma, beta) plus the two mask seeds.

Masks are counter-based SplitMix64 streams indexed row-major, so mask
generation is bit-exact across platforms and trivially parallel.
"""

from __future__ import annotations

import concurrent.futures
import math
import os
import re
from dataclasses import dataclass, replace

import numpy as np

from .errors import KeyFormatError
from .frft import FrftOrder, frft_2d, make_order
from .symbols import RieszPotential, multiplier_grid

__all__ = [
    "PhaseMask",
    "EncryptionKey",
    "SweepResult",
    "gen_phase_mask",
    "encrypt",
    "decrypt",
    "mse",
    "key_sensitivity_sweep",
    "save_key",
    "load_key",
    "parse_angle",
    "format_angle",
    "SWEEP_PARAMETERS",
]

_UINT64_MAX = 2**64 - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

SWEEP_PARAMETERS = ("alpha1", "alpha2", "gamma1", "gamma2", "beta")


@dataclass(frozen=True)
class PhaseMask:
    """Seeded random phase field; ``phases`` in [0, 1), row-major."""

    width: int
    height: int
    phases: np.ndarray

    @property
    def field(self) -> np.ndarray:
        """Unit-modulus mask exp(2*pi*i*phases)."""
        return np.exp(2j * np.pi * self.phases)


def gen_phase_mask(seed: int, width: int, height: int) -> PhaseMask:
    """Deterministic phase mask from a 64-bit seed.

    Output i of the row-major stream is the SplitMix64 finalizer of
    ``seed + (i+1)*golden`` mapped to [0, 1) via its top 53 bits.
    """
    if width < 1 or height < 1:
        raise ValueError("mask dimensions must be positive")
    seed = int(seed)
    if not 0 <= seed <= _UINT64_MAX:
        raise ValueError("seed must fit in 64 unsigned bits")
    n = width * height
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + (np.arange(1, n + 1, dtype=np.uint64)) * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    phases = (z >> np.uint64(11)).astype(np.float64) / float(1 << 53)
    phases = phases.reshape(height, width)
    phases.setflags(write=False)
    return PhaseMask(width=width, height=height, phases=phases)


@dataclass(frozen=True)
class EncryptionKey:
    """Full double-phase key: two order pairs, the symbol exponent, two seeds."""

    alpha: tuple[float, float]
    gamma: tuple[float, float]
    beta: float
    seed1: int
    seed2: int

    def __post_init__(self):
        for name, pair in (("alpha", self.alpha), ("gamma", self.gamma)):
            order = make_order(pair)
            if not order.is_generic():
                raise ValueError(f"{name} orders must not be multiples of pi")
        if not 0.0 < self.beta < 2.0:
            raise ValueError(f"beta must lie in (0, 2), got {self.beta}")
        for name, seed in (("seed1", self.seed1), ("seed2", self.seed2)):
            if not 0 <= int(seed) <= _UINT64_MAX:
                raise ValueError(f"{name} must fit in 64 unsigned bits")

    def alpha_order(self) -> FrftOrder:
        return make_order(self.alpha)

    def gamma_order(self) -> FrftOrder:
        return make_order(self.gamma)


@dataclass(frozen=True)
class SweepResult:
    """MSE-versus-deviation curve for one key parameter.

    Deviations whose perturbed order lands on a multiple of pi are omitted
    from the curve and listed in ``skipped``.
    """

    parameter: str
    deviations: tuple[float, ...]
    mse: tuple[float, ...]
    skipped: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.deviations) != len(self.mse):
            raise ValueError("deviation and mse vectors must have equal length")
        if any(v < 0 for v in self.mse):
            raise ValueError("mse values must be non-negative")


def _masks(key: EncryptionKey, shape) -> tuple[np.ndarray, np.ndarray]:
    h, w = shape
    p1 = gen_phase_mask(key.seed1, w, h).field
    p2 = gen_phase_mask(key.seed2, w, h).field
    return p1, p2


def _symbol_grids(key: EncryptionKey, shape):
    dy = 1.0 / math.sqrt(shape[0])
    dx = 1.0 / math.sqrt(shape[1])
    m = multiplier_grid(RieszPotential(key.beta), shape, dx, dy)
    return m, 1.0 / m


def encrypt(image, key: EncryptionKey, beta_channel: bool = True) -> np.ndarray:
    """Encrypt a normalized [0, 1] image into a complex cipher field.

    ``beta_channel=False`` drops the amplitude symbol, reducing the scheme
    to plain transform-domain double phase coding.
    """
    img = np.asarray(image, dtype=float)
    if img.ndim != 2:
        raise ValueError("expected a 2D image")
    if img.size and (img.min() < -1e-12 or img.max() > 1.0 + 1e-12):
        raise ValueError("image values must lie in [0, 1]; normalize first")
    p1, p2 = _masks(key, img.shape)
    z = frft_2d(img * p1, key.alpha_order())
    if beta_channel:
        z = z * _symbol_grids(key, img.shape)[0]
    return frft_2d(z * p2, key.gamma_order())


def decrypt(cipher, key: EncryptionKey, beta_channel: bool = True) -> np.ndarray:
    """Decrypt a cipher field back to a real image clamped to [0, 1]."""
    z = np.asarray(cipher, dtype=complex)
    if z.ndim != 2:
        raise ValueError("expected a 2D cipher field")
    p1, p2 = _masks(key, z.shape)
    w = frft_2d(z, -key.gamma_order())
    w = w * np.conj(p2)
    if beta_channel:
        w = w * _symbol_grids(key, z.shape)[1]
    w = frft_2d(w, -key.alpha_order()) * np.conj(p1)
    return np.clip(np.abs(w), 0.0, 1.0)


def mse(a, b) -> float:
    """Mean over pixels of the squared difference."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))


def _perturbed_key(key: EncryptionKey, parameter: str, d: float) -> EncryptionKey:
    if parameter == "alpha1":
        return replace(key, alpha=(key.alpha[0] + d, key.alpha[1]))
    if parameter == "alpha2":
        return replace(key, alpha=(key.alpha[0], key.alpha[1] + d))
    if parameter == "gamma1":
        return replace(key, gamma=(key.gamma[0] + d, key.gamma[1]))
    if parameter == "gamma2":
        return replace(key, gamma=(key.gamma[0], key.gamma[1] + d))
    if parameter == "beta":
        return replace(key, beta=key.beta + d)
    raise ValueError(f"unknown sweep parameter {parameter!r}; expected one of {SWEEP_PARAMETERS}")


def _max_workers() -> int:
    env = os.environ.get("FRFT_THREADS")
    if env:
        try:
            val = int(env)
        except ValueError as exc:
            raise ValueError(f"FRFT_THREADS must be a positive integer, got {env!r}") from exc
        if val < 1:
            raise ValueError(f"FRFT_THREADS must be a positive integer, got {env!r}")
        return val
    return min(8, os.cpu_count() or 1)


def key_sensitivity_sweep(image, key: EncryptionKey, parameter: str, deviations,
                          beta_channel: bool = True, max_workers: int | None = None) -> SweepResult:
    """Decrypt a fixed cipher under perturbed keys and record the MSE curve.

    The cipher is produced once with the reference key; each deviation d
    perturbs one key parameter additively before decryption.  Deviations are
    evaluated in parallel (capped by FRFT_THREADS) and reported in input
    order.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ValueError(f"unknown sweep parameter {parameter!r}; expected one of {SWEEP_PARAMETERS}")
    img = np.asarray(image, dtype=float)
    devs = [float(d) for d in deviations]
    if not devs:
        raise ValueError("deviation list must not be empty")
    cipher = encrypt(img, key, beta_channel=beta_channel)

    def one(d: float):
        try:
            pk = _perturbed_key(key, parameter, d)
        except ValueError:
            return None  # perturbation hit a pi-multiple axis or left (0,2)
        return mse(decrypt(cipher, pk, beta_channel=beta_channel), img)

    workers = max_workers or _max_workers()
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        values = list(pool.map(one, devs))

    kept_d, kept_m, skipped = [], [], []
    for d, v in zip(devs, values):
        if v is None:
            skipped.append(d)
        else:
            kept_d.append(d)
            kept_m.append(v)
    return SweepResult(parameter=parameter, deviations=tuple(kept_d), mse=tuple(kept_m),
                       skipped=tuple(skipped))


# ---------------------------------------------------------------------------
# key files: UTF-8 text, one "name = value" per line

_KEY_FIELDS = ("alpha1", "alpha2", "gamma1", "gamma2", "beta", "seed1", "seed2")
_ANGLE_RE = re.compile(r"^(-?)(\d+)?pi(?:/(\d+))?$")


def parse_angle(text: str) -> float:
    """Parse an angle given as '<k>pi/<m>' (e.g. '7pi/8', '-pi/4') or decimal radians."""
    s = text.strip().replace(" ", "")
    m = _ANGLE_RE.match(s)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        k = int(m.group(2)) if m.group(2) else 1
        den = int(m.group(3)) if m.group(3) else 1
        if den == 0:
            raise ValueError(f"zero denominator in angle literal {text!r}")
        return sign * k * math.pi / den
    try:
        return float(s)
    except ValueError as exc:
        raise ValueError(f"cannot parse angle {text!r}") from exc


def format_angle(value: float) -> str:
    """Render an angle as an exact 'kpi/m' literal when one reproduces its bits,
    else as a 17-significant-digit decimal."""
    for den in range(1, 65):
        k = round(value * den / math.pi)
        if k != 0 and k * math.pi / den == value:
            num = "pi" if abs(k) == 1 else f"{abs(k)}pi"
            sign = "-" if k < 0 else ""
            return f"{sign}{num}" if den == 1 else f"{sign}{num}/{den}"
    return f"{value:.17g}"


def save_key(key: EncryptionKey, path) -> None:
    lines = [
        f"alpha1 = {format_angle(key.alpha[0])}",
        f"alpha2 = {format_angle(key.alpha[1])}",
        f"gamma1 = {format_angle(key.gamma[0])}",
        f"gamma2 = {format_angle(key.gamma[1])}",
        f"beta = {key.beta:.17g}",
        f"seed1 = {int(key.seed1)}",
        f"seed2 = {int(key.seed2)}",
    ]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_key(path) -> EncryptionKey:
    """Parse a key file, rejecting unknown, duplicate, or missing fields."""
    fields: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise KeyFormatError(f"line {lineno}: expected 'name = value', got {line!r}",
                                     line=lineno)
            name, _, value = line.partition("=")
            name = name.strip()
            if name not in _KEY_FIELDS:
                raise KeyFormatError(f"line {lineno}: unknown field {name!r}",
                                     field=name, line=lineno)
            if name in fields:
                raise KeyFormatError(f"line {lineno}: duplicate field {name!r}",
                                     field=name, line=lineno)
            fields[name] = value.strip()
    missing = [f for f in _KEY_FIELDS if f not in fields]
    if missing:
        raise KeyFormatError(f"missing key field(s): {', '.join(missing)}", field=missing[0])

    def angle(name):
        try:
            return parse_angle(fields[name])
        except ValueError as exc:
            raise KeyFormatError(f"field {name!r}: {exc}", field=name) from exc

    def integer(name):
        try:
            val = int(fields[name])
        except ValueError as exc:
            raise KeyFormatError(f"field {name!r}: not an integer", field=name) from exc
        if not 0 <= val <= _UINT64_MAX:
            raise KeyFormatError(f"field {name!r}: outside unsigned 64-bit range", field=name)
        return val

    try:
        beta = float(fields["beta"])
    except ValueError as exc:
        raise KeyFormatError("field 'beta': not a number", field="beta") from exc
    try:
        return EncryptionKey(
            alpha=(angle("alpha1"), angle("alpha2")),
            gamma=(angle("gamma1"), angle("gamma2")),
            beta=beta,
            seed1=integer("seed1"),
            seed2=integer("seed2"),
        )
    except ValueError as exc:
        raise KeyFormatError(str(exc)) from exc
