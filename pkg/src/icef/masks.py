"""Frequency-domain masks: which passband subcarriers may carry clipping noise.

A mask splits the ``N`` oversampled bins into three sets of double-sided
subcarrier indices: ``noisy`` (clipping noise allowed), ``clean`` (noise
forbidden, reference symbol kept) and ``null`` (outside the active band).
The dense per-bin weight vector is only built on demand.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .waveform import WaveformConfig


@dataclass(frozen=True, eq=False)
class FrequencyMask:
    transform_size: int
    noisy_set: np.ndarray
    clean_set: np.ndarray
    null_set: np.ndarray
    weights: np.ndarray | None = None
    label: str = ""

    @classmethod
    def from_sets(cls, config: WaveformConfig, noisy, clean, weights=None, label="") -> "FrequencyMask":
        """Build a mask from noisy/clean index collections; null is the complement."""
        noisy = np.unique(np.asarray(noisy, dtype=np.int64))
        clean = np.unique(np.asarray(clean, dtype=np.int64))
        n = config.transform_size
        everything = np.arange(-(n // 2), n // 2)
        null = np.setdiff1d(everything, config.active_indices)
        w = None if weights is None else np.asarray(weights, dtype=float)
        return cls(n, noisy, clean, null, w, label)

    @property
    def is_binary(self) -> bool:
        return self.weights is None or bool(np.all(self.weights == 1.0))

    @property
    def is_icf(self) -> bool:
        return self.clean_set.size == 0 and self.is_binary

    def bins(self, which: str) -> np.ndarray:
        idx = {"noisy": self.noisy_set, "clean": self.clean_set, "null": self.null_set}[which]
        return idx % self.transform_size

    def dense(self) -> np.ndarray:
        """Real weight per transform bin: the mask applied to the clipping noise."""
        h = np.zeros(self.transform_size)
        h[self.bins("noisy")] = 1.0 if self.weights is None else self.weights
        return h

    def membership(self) -> np.ndarray:
        """Per-bin label: 0 null, 1 noisy, 2 clean."""
        m = np.zeros(self.transform_size, dtype=np.int8)
        m[self.bins("noisy")] = 1
        m[self.bins("clean")] = 2
        return m


@dataclass(frozen=True)
class SubBandLayout:
    band_count: int = 12
    band_width_sc: int = 106
    clean_band_indices: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "clean_band_indices", frozenset(int(i) for i in self.clean_band_indices))
        if self.band_count < 1 or self.band_width_sc < 1:
            raise ConfigurationError("band_count and band_width_sc must be positive")
        bad = [i for i in self.clean_band_indices if not 0 <= i < self.band_count]
        if bad:
            raise ConfigurationError(f"clean band indices {sorted(bad)} outside 0..{self.band_count - 1}")


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def __str__(self):
        return "valid" if self.valid else "invalid: " + "; ".join(self.violations)


def icf_mask(config: WaveformConfig) -> FrequencyMask:
    return FrequencyMask.from_sets(config, config.active_indices, [], label="icf")


def _prb_block(config: WaveformConfig, first_prb: int, count: int) -> np.ndarray:
    start = config.active_indices[0] + first_prb * config.prb_size
    return np.arange(start, start + count * config.prb_size)


def centered_clean_mask(config: WaveformConfig, clean_prbs: int, edge_bias: bool = False) -> FrequencyMask:
    """Clean PRBs grown symmetrically from the band centre, noise at both edges.

    An odd number of noisy PRBs cannot be split evenly; it is rejected unless
    ``edge_bias=True``, which puts the extra PRB on the lower edge.
    """
    total = config.prb_count
    if not 0 <= clean_prbs <= total:
        raise ConfigurationError(f"clean_prbs must be in 0..{total}, got {clean_prbs}")
    noisy_prbs = total - clean_prbs
    if noisy_prbs % 2 and not edge_bias:
        raise ConfigurationError(
            f"{noisy_prbs} noisy PRBs cannot be split evenly between the band edges; "
            "pass edge_bias=True to place the extra PRB on the lower edge"
        )
    lower = (noisy_prbs + 1) // 2
    clean = _prb_block(config, lower, clean_prbs)
    noisy = np.setdiff1d(config.active_indices, clean)
    return FrequencyMask.from_sets(config, noisy, clean, label=f"centered-{clean_prbs}")


def subband_mask(config: WaveformConfig, layout: SubBandLayout) -> FrequencyMask:
    if layout.band_count * layout.band_width_sc != config.active_subcarriers:
        raise ConfigurationError(
            f"{layout.band_count} bands x {layout.band_width_sc} SCs does not cover "
            f"{config.active_subcarriers} active subcarriers"
        )
    first = config.active_indices[0]
    clean = [
        np.arange(first + i * layout.band_width_sc, first + (i + 1) * layout.band_width_sc)
        for i in sorted(layout.clean_band_indices)
    ]
    clean = np.concatenate(clean) if clean else np.array([], dtype=np.int64)
    noisy = np.setdiff1d(config.active_indices, clean)
    tag = "-".join(str(i) for i in sorted(layout.clean_band_indices))
    return FrequencyMask.from_sets(config, noisy, clean, label=f"subband-{tag}")


def subband_layouts(band_count: int = 12, band_width_sc: int = 106, clean_count: int = 4):
    """Every layout with ``clean_count`` clean bands, in lexicographic order."""
    for combo in itertools.combinations(range(band_count), clean_count):
        yield SubBandLayout(band_count, band_width_sc, frozenset(combo))


def sample_subband_layouts(count: int, seed: int, band_count: int = 12, band_width_sc: int = 106,
                           clean_count: int = 4) -> list[SubBandLayout]:
    """Seeded subsample (without replacement, lexicographic order kept) of the layouts."""
    layouts = list(subband_layouts(band_count, band_width_sc, clean_count))
    if count >= len(layouts):
        return layouts
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(len(layouts), size=count, replace=False))
    return [layouts[i] for i in picks]


def validate(mask: FrequencyMask, config: WaveformConfig) -> ValidationReport:
    report = ValidationReport()
    n = config.transform_size
    if mask.transform_size != n:
        report.violations.append(f"mask transform size {mask.transform_size} != config {n}")
        return report
    sets = {"noisy": mask.noisy_set, "clean": mask.clean_set, "null": mask.null_set}
    for name, s in sets.items():
        if s.size and (s.min() < -(n // 2) or s.max() >= n // 2):
            report.violations.append(f"{name} set has indices outside -{n // 2}..{n // 2 - 1}")
        if np.unique(s).size != s.size:
            report.violations.append(f"{name} set has repeated indices")
    for (a, sa), (b, sb) in itertools.combinations(sets.items(), 2):
        if np.intersect1d(sa, sb).size:
            report.violations.append(f"sets not disjoint ({a} and {b} overlap)")
    union = np.unique(np.concatenate(list(sets.values())) % n)
    if union.size != n:
        report.violations.append(f"partition incomplete ({n - union.size} bins unassigned)")
    passband = np.union1d(mask.noisy_set, mask.clean_set)
    if not np.array_equal(passband, np.sort(config.active_indices)):
        report.violations.append("noisy and clean sets do not make up the active set")
    if mask.weights is not None:
        if mask.weights.shape != mask.noisy_set.shape:
            report.violations.append(
                f"weights length {mask.weights.size} != noisy set size {mask.noisy_set.size}"
            )
        elif np.any((mask.weights < 0) | (mask.weights > 1)) or not np.all(np.isfinite(mask.weights)):
            report.violations.append("weights outside [0, 1]")
    return report


def _ranges(indices: np.ndarray) -> list[list[int]]:
    """Compress sorted integers into inclusive ``[start, stop]`` runs."""
    if indices.size == 0:
        return []
    breaks = np.nonzero(np.diff(indices) != 1)[0]
    starts = np.concatenate(([indices[0]], indices[breaks + 1]))
    stops = np.concatenate((indices[breaks], [indices[-1]]))
    return [[int(a), int(b)] for a, b in zip(starts, stops)]


def _expand(ranges, config: WaveformConfig, unit: str, field_name: str) -> np.ndarray:
    out = []
    for i, item in enumerate(ranges):
        if isinstance(item, int):
            item = [item, item]
        if not (isinstance(item, (list, tuple)) and len(item) == 2 and all(isinstance(v, int) for v in item)):
            raise ConfigurationError(f"{field_name}[{i}]: expected an index or [start, stop] pair")
        a, b = item
        if b < a:
            raise ConfigurationError(f"{field_name}[{i}]: stop {b} < start {a}")
        if unit == "prb":
            if a < 0 or b >= config.prb_count:
                raise ConfigurationError(f"{field_name}[{i}]: PRB outside 0..{config.prb_count - 1}")
            out.append(_prb_block(config, a, b - a + 1))
        else:
            out.append(np.arange(a, b + 1))
    return np.concatenate(out) if out else np.array([], dtype=np.int64)


def mask_to_dict(mask: FrequencyMask) -> dict:
    """Serialise to the JSON mask exchange format (subcarrier ranges)."""
    return {
        "unit": "sc",
        "transform_size": mask.transform_size,
        "noisy": _ranges(mask.noisy_set),
        "clean": _ranges(mask.clean_set),
        "weights": None if mask.weights is None else [float(w) for w in mask.weights],
        "label": mask.label,
    }


def mask_from_dict(data: dict, config: WaveformConfig) -> FrequencyMask:
    if not isinstance(data, dict):
        raise ConfigurationError("mask document must be a JSON object")
    unit = data.get("unit", "sc")
    if unit not in ("sc", "prb"):
        raise ConfigurationError(f"unit: expected 'sc' or 'prb', got {unit!r}")
    size = data.get("transform_size")
    if size is not None and size != config.transform_size:
        raise ConfigurationError(f"transform_size: mask is for N={size}, config has N={config.transform_size}")
    noisy = _expand(data.get("noisy", []), config, unit, "noisy")
    clean = _expand(data.get("clean", []), config, unit, "clean")
    weights = data.get("weights")
    if weights is not None and len(weights) != np.unique(noisy).size:
        raise ConfigurationError(f"weights: {len(weights)} values for {np.unique(noisy).size} noisy SCs")
    if np.unique(noisy).size != noisy.size or np.unique(clean).size != clean.size:
        raise ConfigurationError("noisy/clean ranges overlap themselves")
    mask = FrequencyMask(
        config.transform_size,
        np.sort(noisy),
        np.sort(clean),
        np.setdiff1d(np.arange(-(config.transform_size // 2), config.transform_size // 2),
                     config.active_indices),
        None if weights is None else np.asarray(weights, dtype=float),
        data.get("label", ""),
    )
    return mask


def subband_count(band_count: int, clean_count: int) -> int:
    return math.comb(band_count, clean_count)
