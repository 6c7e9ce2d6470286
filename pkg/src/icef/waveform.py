"""OFDM numerology, QAM data, oversampled modulation, PAPR and the soft limiter.

Spectra are stored in transform order (bin ``k mod N``) on the oversampled grid of
``N = nominal_transform_size * oversampling_factor`` bins.  Subcarriers are named
by their double-sided index ``k`` in ``{-N_act/2, ..., N_act/2 - 1}``.

The transform pair is scaled so that the inverse transform is the plain sum
``x[n] = sum_k X[k] exp(j 2 pi k n / N)`` and the forward transform carries the
``1/N``.  With the spectrum holding ``data / sqrt(N_act)`` this reproduces the
synthesis equation exactly and keeps ``inverse(forward(x)) == x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.fft

from .errors import ConfigurationError, DimensionError, InvalidSignalError

MODULATIONS = {"QPSK": 2, "QAM16": 4, "QAM64": 6, "QAM256": 8}

_ALIASES = {
    "4QAM": "QPSK",
    "16QAM": "QAM16",
    "16-QAM": "QAM16",
    "64QAM": "QAM64",
    "64-QAM": "QAM64",
    "256QAM": "QAM256",
    "256-QAM": "QAM256",
}


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class WaveformConfig:
    nominal_transform_size: int = 2048
    oversampling_factor: int = 8
    active_subcarriers: int = 1272
    prb_size: int = 12
    subcarrier_spacing: float = 15e3

    def __post_init__(self):
        n_dft = self.nominal_transform_size
        if not _is_pow2(n_dft):
            raise ConfigurationError(f"nominal_transform_size must be a power of two, got {n_dft}")
        if not _is_pow2(self.oversampling_factor):
            raise ConfigurationError(
                f"oversampling_factor must be a power of two, got {self.oversampling_factor}"
            )
        if self.prb_size < 1:
            raise ConfigurationError("prb_size must be positive")
        if not 0 < self.active_subcarriers < n_dft:
            raise ConfigurationError(
                f"active_subcarriers must be in (0, {n_dft}), got {self.active_subcarriers}"
            )
        if self.active_subcarriers % self.prb_size:
            raise ConfigurationError(
                f"active_subcarriers ({self.active_subcarriers}) is not a multiple of "
                f"prb_size ({self.prb_size})"
            )

    @classmethod
    def nr_20mhz(cls) -> "WaveformConfig":
        """106 PRBs at 15 kHz, 2048-point nominal transform, 8x oversampling."""
        return cls()

    @property
    def transform_size(self) -> int:
        return self.nominal_transform_size * self.oversampling_factor

    @property
    def log2_size(self) -> int:
        return self.transform_size.bit_length() - 1

    @property
    def prb_count(self) -> int:
        return self.active_subcarriers // self.prb_size

    @cached_property
    def active_indices(self) -> np.ndarray:
        half = self.active_subcarriers // 2
        return np.arange(-half, self.active_subcarriers - half)

    @cached_property
    def active_bins(self) -> np.ndarray:
        return self.active_indices % self.transform_size

    def to_bins(self, indices) -> np.ndarray:
        """Map double-sided subcarrier indices to transform bins."""
        return np.asarray(indices, dtype=np.int64) % self.transform_size

    def to_dict(self) -> dict:
        return {
            "nominal_transform_size": self.nominal_transform_size,
            "oversampling_factor": self.oversampling_factor,
            "active_subcarriers": self.active_subcarriers,
            "prb_size": self.prb_size,
            "subcarrier_spacing": self.subcarrier_spacing,
        }


@dataclass(frozen=True)
class ClipperConfig:
    """Soft-limiter settings for one reduction run.

    ``threshold_mode`` is ``"fixed"`` (A held at its initial value) or
    ``"tracking"`` (A re-derived each iteration from the current mean power).
    """

    papr_target_db: float
    max_iterations: int
    amplitude_threshold: float
    threshold_mode: str = "fixed"

    def __post_init__(self):
        if not self.amplitude_threshold > 0:
            raise ConfigurationError("amplitude_threshold must be positive")
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be >= 1")
        if self.threshold_mode not in ("fixed", "tracking"):
            raise ConfigurationError(f"unknown threshold_mode {self.threshold_mode!r}")

    @classmethod
    def for_symbol(cls, symbol: "OfdmSymbol", papr_target_db: float, max_iterations: int,
                   threshold_mode: str = "fixed") -> "ClipperConfig":
        power = float(mean_power(symbol.reference_time))
        return cls(papr_target_db, max_iterations,
                   threshold_from_target(papr_target_db, power), threshold_mode)


@dataclass(frozen=True, eq=False)
class OfdmSymbol:
    config: WaveformConfig
    reference_spectrum: np.ndarray
    current_spectrum: np.ndarray
    current_time: np.ndarray
    iteration: int = 0
    _reference_time: np.ndarray | None = field(default=None, repr=False)

    @property
    def reference_time(self) -> np.ndarray:
        if self._reference_time is not None:
            return self._reference_time
        return inverse_transform(self.reference_spectrum)

    def evolve(self, spectrum: np.ndarray, time: np.ndarray) -> "OfdmSymbol":
        return OfdmSymbol(self.config, self.reference_spectrum, spectrum, time,
                          self.iteration + 1, self.reference_time)

    @classmethod
    def from_time(cls, config: WaveformConfig, x: np.ndarray, tol: float = 1e-9) -> "OfdmSymbol":
        """Wrap a time-domain symbol; energy outside the active band must be below ``tol``."""
        x = np.asarray(x, dtype=np.complex128)
        if x.shape != (config.transform_size,):
            raise DimensionError(f"expected {config.transform_size} samples, got {x.shape}")
        spectrum = forward_transform(x)
        inband = np.zeros(config.transform_size, dtype=bool)
        inband[config.active_bins] = True
        total = np.sum(np.abs(spectrum) ** 2)
        leak = np.sum(np.abs(spectrum[~inband]) ** 2)
        if total > 0 and leak > tol * total:
            raise InvalidSignalError(
                f"symbol carries {leak / total:.3e} of its energy outside the active band"
            )
        spectrum[~inband] = 0
        return cls(config, spectrum, spectrum.copy(), x.copy(), 0, x.copy())


def canonical_modulation(name: str) -> str:
    key = str(name).upper().replace("_", "")
    key = _ALIASES.get(key, key)
    if key not in MODULATIONS:
        raise ConfigurationError(
            f"unsupported modulation {name!r}; choose from {sorted(MODULATIONS)}"
        )
    return key


def _gray_pam(bits_per_axis: int) -> np.ndarray:
    """PAM amplitudes indexed by Gray label."""
    m = 1 << bits_per_axis
    labels = np.arange(m)
    binary = labels.copy()
    shift = labels >> 1
    while shift.any():
        binary ^= shift
        shift >>= 1
    return (2 * binary - (m - 1)).astype(float)


def constellation(modulation: str) -> np.ndarray:
    """Unit-power square QAM points indexed by their Gray-coded bit label.

    The upper half of the label selects the in-phase level, the lower half the
    quadrature level, so neighbouring points differ in exactly one bit.
    """
    bits = MODULATIONS[canonical_modulation(modulation)]
    half = bits // 2
    pam = _gray_pam(half)
    labels = np.arange(1 << bits)
    points = pam[labels >> half] + 1j * pam[labels & ((1 << half) - 1)]
    m = 1 << bits
    return points / math.sqrt(2 * (m - 1) / 3)


def generate_qam_symbols(modulation: str, count: int, seed) -> np.ndarray:
    if count <= 0:
        raise ConfigurationError("count must be positive")
    points = constellation(modulation)
    rng = np.random.default_rng(seed)
    return points[rng.integers(0, points.size, count)]


def symbol_seed(seed: int, *key: int) -> int:
    """64-bit seed for the stream identified by ``(seed, *key)``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    lo, hi = ss.generate_state(2, np.uint32)
    return int(lo) | (int(hi) << 32)


def _check_length(x: np.ndarray) -> None:
    n = x.shape[-1]
    if not _is_pow2(n):
        raise DimensionError(f"transform length must be a power of two, got {n}")


def forward_transform(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    _check_length(x)
    return scipy.fft.fft(x, axis=-1, norm="forward")


def inverse_transform(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.complex128)
    _check_length(X)
    return scipy.fft.ifft(X, axis=-1, norm="forward")


def ofdm_modulate(config: WaveformConfig, data: np.ndarray) -> OfdmSymbol:
    data = np.asarray(data, dtype=np.complex128)
    if data.shape != (config.active_subcarriers,):
        raise DimensionError(
            f"expected {config.active_subcarriers} data symbols, got shape {data.shape}"
        )
    spectrum = np.zeros(config.transform_size, dtype=np.complex128)
    spectrum[config.active_bins] = data / math.sqrt(config.active_subcarriers)
    x = inverse_transform(spectrum)
    return OfdmSymbol(config, spectrum, spectrum.copy(), x, 0, x)


def mean_power(x: np.ndarray):
    """Mean of ``|x|**2`` along the last axis."""
    x = np.asarray(x)
    return (x.real ** 2 + x.imag ** 2).mean(axis=-1)


def papr_db(x: np.ndarray):
    """Peak-to-average power ratio in dB along the last axis."""
    x = np.asarray(x)
    power = x.real ** 2 + x.imag ** 2
    mean = power.mean(axis=-1)
    if np.any(mean == 0):
        raise InvalidSignalError("PAPR is undefined for a zero-energy signal")
    out = 10.0 * np.log10(power.max(axis=-1) / mean)
    return float(out) if out.ndim == 0 else out


def clip(x: np.ndarray, threshold) -> np.ndarray:
    """Soft limiter: saturate the modulus at ``threshold`` keeping the phase.

    ``threshold`` may be a scalar or broadcast against ``x`` (one value per row).
    The output modulus never exceeds the threshold, not even by one ulp.
    """
    x = np.asarray(x, dtype=np.complex128)
    thr = np.asarray(threshold, dtype=float)
    a = np.broadcast_to(thr, x.shape)
    if np.any(thr <= 0):
        raise ConfigurationError("clipping threshold must be positive")
    # cheap squared-modulus screen, exact modulus comparison on the survivors only
    power = x.real ** 2 + x.imag ** 2
    cand = np.nonzero(power > (thr * thr) * (1 - 1e-9))
    mag_c = np.abs(x[cand])
    keep = mag_c > a[cand]
    over = tuple(ix[keep] for ix in cand)
    out = x.copy()
    if not keep.any():
        return out
    scale = a[over] / mag_c[keep]
    clipped = x[over] * scale
    bad = np.abs(clipped) > a[over]
    while bad.any():
        scale[bad] = np.nextafter(scale[bad], 0.0)
        clipped[bad] = x[over][bad] * scale[bad]
        bad = np.abs(clipped) > a[over]
    out[over] = clipped
    return out


def threshold_from_target(papr_target_db: float, reference_power: float) -> float:
    if not reference_power > 0:
        raise InvalidSignalError("reference power must be positive")
    return math.sqrt(reference_power * 10.0 ** (papr_target_db / 10.0))
