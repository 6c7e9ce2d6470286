"""Ensemble statistics: PAPR CCDF, 1 % readout, per-subcarrier error power, feasibility."""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ExtrapolationError, StatisticsError
from .masks import FrequencyMask
from .waveform import canonical_modulation

NEG_INF = "-inf"
POS_INF = "inf"
"""Text sentinels written wherever a dB value is infinite."""


def format_db(value: float, places: int = 4) -> str:
    if value == -math.inf:
        return NEG_INF
    if value == math.inf:
        return POS_INF
    if not math.isfinite(value):
        raise StatisticsError(f"cannot serialise non-finite value {value}")
    return f"{value:.{places}f}"


def json_db(value: float):
    """JSON-safe dB value: the string sentinel for -inf, else a rounded float."""
    if math.isinf(value):
        return NEG_INF if value < 0 else POS_INF
    return round(float(value), 6)


def to_db(ratio):
    """10*log10 with exact zeros mapped to -inf and no warnings."""
    ratio = np.asarray(ratio, dtype=float)
    out = np.full(ratio.shape, -np.inf)
    pos = ratio > 0
    out[pos] = 10.0 * np.log10(ratio[pos])
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class CcdfCurve:
    papr_grid_db: np.ndarray
    probability: np.ndarray
    sample_count: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["level_db", "ccdf"])
        for g, p in zip(self.papr_grid_db, self.probability):
            w.writerow([format_db(g), f"{p:.6g}"])
        return buf.getvalue()


def estimate_ccdf(papr_samples_db, grid) -> CcdfCurve:
    samples = np.sort(np.asarray(papr_samples_db, dtype=float).ravel())
    if samples.size == 0:
        raise StatisticsError("cannot estimate a CCDF from zero samples")
    grid = np.asarray(grid, dtype=float).ravel()
    if np.any(np.diff(grid) < 0):
        raise StatisticsError("CCDF grid must be ascending")
    above = samples.size - np.searchsorted(samples, grid, side="right")
    return CcdfCurve(grid, above / samples.size, int(samples.size))


def empirical_ccdf(papr_samples_db) -> CcdfCurve:
    """CCDF evaluated exactly at every distinct sample value."""
    samples = np.asarray(papr_samples_db, dtype=float).ravel()
    if samples.size == 0:
        raise StatisticsError("cannot estimate a CCDF from zero samples")
    return estimate_ccdf(samples, np.unique(samples))


def papr_at_probability(curve: CcdfCurve, p: float) -> float:
    """PAPR level where the CCDF crosses ``p``, interpolated log-linearly.

    Only the range ``[smallest positive probability, probability[0]]`` is
    covered; anything else raises :class:`ExtrapolationError`.
    """
    if not 0 < p < 1:
        raise StatisticsError(f"probability must be in (0, 1), got {p}")
    grid, prob = curve.papr_grid_db, curve.probability
    positive = prob[prob > 0]
    if positive.size == 0 or p > prob[0] or p < positive.min():
        lo = positive.min() if positive.size else 0.0
        raise ExtrapolationError(
            f"p={p} is outside the observed CCDF range [{lo}, {prob[0] if prob.size else 0}]"
        )
    i = int(np.argmax(prob <= p))
    if prob[i] == p or i == 0:
        return float(grid[i])
    g0, g1 = grid[i - 1], grid[i]
    l0, lp = math.log(prob[i - 1]), math.log(p)
    if prob[i] == 0:
        # p equals the last positive level (range check above); nothing to interpolate
        return float(g0)
    l1 = math.log(prob[i])
    return float(g0 + (g1 - g0) * (lp - l0) / (l1 - l0))


def papr_quantile_db(papr_samples_db, p: float = 0.01) -> float:
    """The ``p`` CCDF readout taken on the exact empirical curve."""
    return papr_at_probability(empirical_ccdf(papr_samples_db), p)


def analytic_ccdf(gamma_db, active_subcarriers: int):
    """Nyquist-rate reference CCDF ``1 - (1 - exp(-gamma))**N_act``."""
    gamma = 10.0 ** (np.asarray(gamma_db, dtype=float) / 10.0)
    return -np.expm1(active_subcarriers * np.log1p(-np.exp(-gamma)))


def analytic_papr_at_probability(p: float, active_subcarriers: int) -> float:
    gamma = -math.log(-math.expm1(math.log1p(-p) / active_subcarriers))
    return 10.0 * math.log10(gamma)


class MseAccumulator:
    """Mergeable sums of error and reference power per transform bin."""

    def __init__(self, transform_size: int):
        self.error = np.zeros(transform_size)
        self.reference = np.zeros(transform_size)
        self.count = 0

    def add(self, reference_spectra, final_spectra):
        X0 = np.atleast_2d(reference_spectra)
        X = np.atleast_2d(final_spectra)
        d = X - X0
        self.error += (d.real ** 2 + d.imag ** 2).sum(axis=0)
        self.reference += (X0.real ** 2 + X0.imag ** 2).sum(axis=0)
        self.count += X0.shape[0]
        return self

    def merge(self, other: "MseAccumulator") -> "MseAccumulator":
        self.error += other.error
        self.reference += other.reference
        self.count += other.count
        return self

    def report(self, mask: FrequencyMask) -> "MseReport":
        if self.count == 0:
            raise StatisticsError("no symbols accumulated")
        active = np.concatenate([mask.noisy_set, mask.clean_set])
        order = np.argsort(active)
        active = active[order]
        bins = active % mask.transform_size
        with np.errstate(invalid="ignore", divide="ignore"):
            per_sc = np.where(self.reference[bins] > 0, self.error[bins] / self.reference[bins], 0.0)
        noisy = mask.bins("noisy")
        clean = mask.bins("clean")
        ref = self.reference[noisy].sum()
        distorted = to_db(self.error[noisy].sum() / ref) if ref > 0 else -math.inf
        clean_max = float(self.error[clean].max()) if clean.size else 0.0
        return MseReport(active, per_sc, float(distorted), clean_max, self.count)

    def noise_spectrum_db(self) -> np.ndarray:
        """Mean error power per bin relative to mean active-bin reference power."""
        if self.count == 0:
            raise StatisticsError("no symbols accumulated")
        active_power = self.reference[self.reference > 0].mean()
        return to_db(self.error / active_power)


@dataclass(frozen=True, eq=False)
class MseReport:
    subcarriers: np.ndarray
    per_subcarrier_error_power: np.ndarray
    distorted_mse_db: float
    clean_max_error: float
    symbol_count: int = 0

    def per_subcarrier_db(self) -> np.ndarray:
        return to_db(self.per_subcarrier_error_power)


def _final_spectra(results):
    results = list(results)
    if not results:
        raise StatisticsError("empty result collection")
    X0 = np.stack([r.symbol.reference_spectrum for r in results])
    X = np.stack([r.symbol.current_spectrum for r in results])
    return X0, X


def mse_report(results, mask: FrequencyMask) -> MseReport:
    X0, X = _final_spectra(results)
    return MseAccumulator(mask.transform_size).add(X0, X).report(mask)


def noise_spectrum(results, mask: FrequencyMask) -> np.ndarray:
    X0, X = _final_spectra(results)
    return MseAccumulator(mask.transform_size).add(X0, X).noise_spectrum_db()


@dataclass(frozen=True)
class MseRequirementTable:
    required_db: dict = field(default_factory=lambda: {
        "QPSK": -15.0, "QAM16": -18.0, "QAM64": -22.0, "QAM256": -29.0,
    })
    margin_db: float = 3.0

    def __post_init__(self):
        values = list(self.required_db.values())
        if any(b >= a for a, b in zip(values, values[1:])):
            raise StatisticsError("MSE requirements must decrease strictly with modulation order")

    def limit_db(self, modulation: str) -> float:
        return self.required_db[canonical_modulation(modulation)] - self.margin_db


class Feasibility(str, enum.Enum):
    FEASIBLE = "feasible"
    PAPR_LIMITED = "PAPR-limited"
    MSE_LIMITED = "MSE-limited"
    BOTH_LIMITED = "both-limited"


def feasibility(achieved_papr_db: float, target_papr_db: float, papr_tolerance_db: float,
                mse_db: float, modulation: str, table: MseRequirementTable | None = None) -> Feasibility:
    table = table or MseRequirementTable()
    papr_ok = achieved_papr_db <= target_papr_db + papr_tolerance_db
    mse_ok = mse_db <= table.limit_db(modulation)
    if papr_ok and mse_ok:
        return Feasibility.FEASIBLE
    if mse_ok:
        return Feasibility.PAPR_LIMITED
    if papr_ok:
        return Feasibility.MSE_LIMITED
    return Feasibility.BOTH_LIMITED
