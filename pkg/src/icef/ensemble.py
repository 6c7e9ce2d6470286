"""Monte-Carlo ensembles of OFDM symbols pushed through ICF/ICEF.

Symbol ``i`` of an ensemble draws its data from the stream ``(seed, *stream, i)``
so results do not depend on chunking or on how many workers run the chunks.
Chunks have a fixed size and are merged in index order, which keeps the
floating-point sums identical between serial and parallel runs.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import iterate_batch
from .masks import FrequencyMask
from .metrics import MseAccumulator
from .waveform import (
    WaveformConfig,
    canonical_modulation,
    generate_qam_symbols,
    inverse_transform,
    papr_db,
    symbol_seed,
)

CHUNK_SIZE = 64


@dataclass
class EnsembleStats:
    """Per-symbol PAPR/iteration samples plus error-power sums for one (target, cap) cell."""

    papr_db: np.ndarray
    iterations: np.ndarray
    mse: MseAccumulator
    converged: np.ndarray

    @property
    def converged_fraction(self) -> float:
        return float(np.mean(self.converged))


@dataclass
class EnsembleResult:
    initial_papr_db: np.ndarray
    cells: dict  # (target_db, cap) -> EnsembleStats


def reference_spectra(config: WaveformConfig, modulation: str, seed: int, indices, stream=()) -> np.ndarray:
    """Stacked reference spectra for the given symbol indices."""
    scale = 1.0 / np.sqrt(config.active_subcarriers)
    X0 = np.zeros((len(indices), config.transform_size), dtype=np.complex128)
    for row, i in enumerate(indices):
        data = generate_qam_symbols(modulation, config.active_subcarriers, symbol_seed(seed, *stream, i))
        X0[row, config.active_bins] = data * scale
    return X0


def _chunk(job):
    config, mask, modulation, targets, caps, seed, stream, start, stop, method, mode = job
    X0 = reference_spectra(config, modulation, seed, range(start, stop), stream)
    x0 = inverse_transform(X0)
    initial = papr_db(x0)
    cells = {}
    for target in targets:
        for state in iterate_batch(X0, target, caps, mask, method, mode, initial_times=x0):
            acc = MseAccumulator(config.transform_size).add(X0, state.spectra)
            cells[(target, state.cap)] = (state.papr_db.copy(), state.iterations.copy(),
                                          state.converged.copy(), acc)
    return initial, cells


def worker_count(requested: int | None = None) -> int:
    cap = os.environ.get("ICEF_THREADS")
    n = requested or os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def simulate(config: WaveformConfig, mask: FrequencyMask, modulation: str, targets_db, caps, symbols: int,
             seed: int, stream=(), method: str = "ICEF", threshold_mode: str = "fixed",
             workers: int | None = None) -> EnsembleResult:
    modulation = canonical_modulation(modulation)
    targets = [float(t) for t in targets_db]
    caps = sorted({int(c) for c in caps})
    jobs = [
        (config, mask, modulation, targets, caps, seed, tuple(stream), s, min(s + CHUNK_SIZE, symbols),
         method, threshold_mode)
        for s in range(0, symbols, CHUNK_SIZE)
    ]
    n = min(worker_count(workers), len(jobs))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            parts = list(pool.map(_chunk, jobs))
    else:
        parts = [_chunk(j) for j in jobs]
    initial = np.concatenate([p[0] for p in parts])
    cells = {}
    for key in parts[0][1]:
        acc = MseAccumulator(config.transform_size)
        for p in parts:
            acc.merge(p[1][key][3])
        cells[key] = EnsembleStats(
            np.concatenate([p[1][key][0] for p in parts]),
            np.concatenate([p[1][key][1] for p in parts]),
            acc,
            np.concatenate([p[1][key][2] for p in parts]),
        )
    return EnsembleResult(initial, cells)


def unclipped_papr(config: WaveformConfig, modulation: str, symbols: int, seed: int, stream=()) -> np.ndarray:
    out = []
    for s in range(0, symbols, CHUNK_SIZE):
        X0 = reference_spectra(config, modulation, seed, range(s, min(s + CHUNK_SIZE, symbols)), stream)
        out.append(np.atleast_1d(papr_db(inverse_transform(X0))))
    return np.concatenate(out)
