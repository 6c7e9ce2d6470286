"""Iterative clipping and filtering (ICF) and clipping-and-error-filtering (ICEF).

One iteration of either method clips the current time signal, transforms it,
and filters in the frequency domain.  ICF masks the whole clipped spectrum.
ICEF instead separates the clipping noise ``C = Xbar - X0`` and adds it back
onto the pristine reference only where the mask allows:

    X = X0 + H * C

For binary masks this reduces to a per-bin selection (noisy bins take
``Xbar``, clean bins keep ``X0``, null bins are zero), which is what the fast
path does.  The literal form is kept as ``icef_step(..., literal=True)`` and
is the path used for non-binary weights.

All kernels work on ``(rows, N)`` arrays so that a single symbol and a batch
of symbols go through exactly the same arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ContractError, DimensionError
from .masks import FrequencyMask
from .waveform import (
    ClipperConfig,
    OfdmSymbol,
    WaveformConfig,
    _is_pow2,
    clip,
    forward_transform,
    inverse_transform,
    mean_power,
    papr_db,
)

METHODS = ("ICF", "ICEF")


@dataclass(frozen=True, eq=False)
class ClippingNoise:
    spectrum: np.ndarray


@dataclass(frozen=True, eq=False)
class PaprReductionResult:
    symbol: OfdmSymbol
    iterations_used: int
    papr_trace_db: np.ndarray
    converged: bool

    @property
    def initial_papr_db(self) -> float:
        return float(self.papr_trace_db[0])

    @property
    def final_papr_db(self) -> float:
        return float(self.papr_trace_db[-1])


@dataclass(frozen=True)
class ComplexityEstimate:
    real_mults_per_iter: int
    real_adds_per_iter: int
    method: str
    transform_size: int


def _as_index(bins: np.ndarray):
    """A slice when the bins are one contiguous run, else the index array."""
    if bins.size and bins[-1] - bins[0] + 1 == bins.size and np.all(np.diff(bins) == 1):
        return slice(int(bins[0]), int(bins[-1]) + 1)
    return bins


class _MaskPlan:
    """Precomputed bin selectors for one mask."""

    def __init__(self, mask: FrequencyMask):
        self.mask = mask
        self.clean = _as_index(np.sort(mask.bins("clean")))
        self.null = _as_index(np.sort(mask.bins("null")))
        self.has_clean = mask.clean_set.size > 0
        self.binary = mask.is_binary
        self._dense = None

    @property
    def dense(self) -> np.ndarray:
        if self._dense is None:
            self._dense = self.mask.dense()
        return self._dense


def _thresholds(x: np.ndarray, fixed: np.ndarray, clipper_target_db: float, mode: str) -> np.ndarray:
    if mode == "fixed":
        return fixed
    return np.sqrt(mean_power(x) * 10.0 ** (clipper_target_db / 10.0))


def _filter_icf(Xbar, plan: _MaskPlan):
    Xbar[:, plan.null] = 0
    return Xbar


def _filter_icef_binary(Xbar, X0, plan: _MaskPlan):
    if plan.has_clean:
        Xbar[:, plan.clean] = X0[:, plan.clean]
    Xbar[:, plan.null] = 0
    return Xbar


def _filter_icef_literal(Xbar, X0, plan: _MaskPlan):
    noise = Xbar - X0
    return X0 + plan.dense * noise


def _step_rows(x, X0, thresholds, plan: _MaskPlan, method: str, literal: bool = False):
    """One iteration on every row of ``x``; returns (spectrum, time)."""
    xbar = clip(x, thresholds[:, None])
    Xbar = forward_transform(xbar)
    if method == "ICF":
        X = _filter_icf(Xbar, plan)
    elif literal or not plan.binary:
        X = _filter_icef_literal(Xbar, X0, plan)
    else:
        X = _filter_icef_binary(Xbar, X0, plan)
    return X, inverse_transform(X)


def _check_symbol(symbol: OfdmSymbol, mask: FrequencyMask):
    n = symbol.config.transform_size
    if mask.transform_size != n or symbol.current_time.shape != (n,):
        raise DimensionError(
            f"mask has N={mask.transform_size}, symbol has N={n} "
            f"({symbol.current_time.shape[0]} samples)"
        )


def _single_step(symbol, clipper, mask, method, literal=False):
    _check_symbol(symbol, mask)
    x = symbol.current_time[None, :]
    a = _thresholds(x, np.array([clipper.amplitude_threshold]), clipper.papr_target_db,
                    clipper.threshold_mode)
    X, xt = _step_rows(x, symbol.reference_spectrum[None, :], a, _MaskPlan(mask), method, literal)
    return symbol.evolve(X[0], xt[0])


def icf_step(symbol: OfdmSymbol, clipper: ClipperConfig, mask: FrequencyMask) -> OfdmSymbol:
    if mask.clean_set.size or not mask.is_binary:
        raise ContractError("icf_step needs a pure ICF mask (no clean set, unit weights); use icef_step")
    return _single_step(symbol, clipper, mask, "ICF")


def icef_step(symbol: OfdmSymbol, clipper: ClipperConfig, mask: FrequencyMask,
              literal: bool = False) -> OfdmSymbol:
    """One ICEF iteration; ``literal`` forces the separate-noise form even for binary masks."""
    return _single_step(symbol, clipper, mask, "ICEF", literal)


def clipping_noise(symbol: OfdmSymbol, clipper: ClipperConfig) -> ClippingNoise:
    """Clipping noise the next iteration would see, before masking."""
    xbar = clip(symbol.current_time, clipper.amplitude_threshold)
    return ClippingNoise(forward_transform(xbar) - symbol.reference_spectrum)


def run(symbol: OfdmSymbol, clipper: ClipperConfig, mask: FrequencyMask, method: str = "ICEF",
        keep_trace: bool = True) -> PaprReductionResult:
    """Iterate until the PAPR meets the target or the iteration cap is hit."""
    method = method.upper()
    if method not in METHODS:
        raise ContractError(f"method must be one of {METHODS}, got {method!r}")
    if symbol.iteration != 0:
        raise ContractError("run expects a symbol at iteration 0")
    step = icf_step if method == "ICF" else icef_step
    papr = papr_db(symbol.current_time)
    trace = [papr]
    while papr > clipper.papr_target_db and symbol.iteration < clipper.max_iterations:
        symbol = step(symbol, clipper, mask)
        papr = papr_db(symbol.current_time)
        if keep_trace:
            trace.append(papr)
    if not keep_trace:
        trace = [trace[0], papr] if symbol.iteration else trace
    return PaprReductionResult(symbol, symbol.iteration, np.asarray(trace),
                               bool(papr <= clipper.papr_target_db))


@dataclass
class BatchState:
    """Snapshot of a batch after ``cap`` allowed iterations."""

    cap: int
    spectra: np.ndarray
    times: np.ndarray
    papr_db: np.ndarray
    iterations: np.ndarray
    converged: np.ndarray


def iterate_batch(reference_spectra: np.ndarray, papr_target_db: float, caps, mask: FrequencyMask,
                  method: str = "ICEF", threshold_mode: str = "fixed",
                  initial_times: np.ndarray | None = None) -> Iterator[BatchState]:
    """Run many symbols at once, yielding the batch state at each cap in ``caps``.

    Row ``i`` follows exactly the trajectory ``run`` produces for that symbol,
    so the snapshot at cap ``L`` equals a run with ``max_iterations=L``.  The
    yielded arrays are live; copy them if they must outlive the next step.
    """
    method = method.upper()
    X0 = np.ascontiguousarray(reference_spectra, dtype=np.complex128)
    if X0.ndim != 2 or X0.shape[1] != mask.transform_size:
        raise DimensionError(f"expected (rows, {mask.transform_size}) spectra, got {X0.shape}")
    if method == "ICF" and (mask.clean_set.size or not mask.is_binary):
        raise ContractError("ICF needs a pure ICF mask")
    caps = sorted({int(c) for c in caps})
    if not caps or caps[0] < 1:
        raise ContractError("iteration caps must be positive")
    plan = _MaskPlan(mask)
    x = inverse_transform(X0) if initial_times is None else np.array(initial_times, dtype=np.complex128)
    X = X0.copy()
    fixed = np.sqrt(mean_power(x) * 10.0 ** (papr_target_db / 10.0))
    papr = papr_db(x).reshape(-1)
    iterations = np.zeros(X0.shape[0], dtype=np.int64)
    for level in range(1, caps[-1] + 1):
        active = papr > papr_target_db
        if active.all():
            a = _thresholds(x, fixed, papr_target_db, threshold_mode)
            X, x = _step_rows(x, X0, a, plan, method)
            papr = papr_db(x).reshape(-1)
            iterations += 1
        elif active.any():
            rows = np.nonzero(active)[0]
            xs = x[rows]
            a = _thresholds(xs, fixed[rows], papr_target_db, threshold_mode)
            Xn, xn = _step_rows(xs, X0[rows], a, plan, method)
            X[rows] = Xn
            x[rows] = xn
            papr[rows] = papr_db(xn)
            iterations[rows] += 1
        if level in caps:
            yield BatchState(level, X, x, papr, iterations, papr <= papr_target_db)


def complexity(config, method: str = "ICF") -> ComplexityEstimate:
    """Real multiplications and additions per iteration with split-radix transforms.

    ``config`` is a :class:`WaveformConfig` or the transform size ``N``.
    """
    n = config.transform_size if isinstance(config, WaveformConfig) else int(config)
    if not _is_pow2(n):
        raise DimensionError(f"transform size must be a power of two, got {n}")
    m = n.bit_length() - 1
    mults = 2 * (m * n - 3 * n + 4)
    adds = 2 * (3 * m * n - 3 * n + 4)
    key = method.upper()
    if key in ("ICF", "ICEF-BINARY", "ICEF"):
        pass
    elif key == "ICEF-WEIGHTED":
        mults += 2 * n
        adds += 4 * n
    else:
        raise ContractError(f"unknown method {method!r}")
    canonical = {"ICF": "ICF", "ICEF": "ICEF-binary", "ICEF-BINARY": "ICEF-binary",
                 "ICEF-WEIGHTED": "ICEF-weighted"}[key]
    return ComplexityEstimate(mults, adds, canonical, n)


def transform_cost(n: int) -> tuple[int, int]:
    """(real mults, real adds) of one split-radix ``n``-point complex FFT."""
    m = n.bit_length() - 1
    return m * n - 3 * n + 4, 3 * m * n - 3 * n + 4


def overhead(config) -> tuple[float, float]:
    """Fractional extra (mults, adds) of weighted ICEF over ICF."""
    base = complexity(config, "ICF")
    weighted = complexity(config, "ICEF-weighted")
    return ((weighted.real_mults_per_iter - base.real_mults_per_iter) / base.real_mults_per_iter,
            (weighted.real_adds_per_iter - base.real_adds_per_iter) / base.real_adds_per_iter)
