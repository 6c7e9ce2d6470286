"""Declarative, seeded reproductions of the clean-PRB sweep, the modulation
feasibility map and the mask-placement study.

Plans are JSON documents (see ``docs/formats.md``).  Every study is a pure
function of its plan: rerunning with the same plan and seed gives
byte-identical CSV/JSON output.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from . import __version__
from .engine import METHODS
from .ensemble import simulate, unclipped_papr
from .errors import ConfigurationError, PlanError
from .io import dumps, plan_hash
from .masks import (
    FrequencyMask,
    SubBandLayout,
    centered_clean_mask,
    icf_mask,
    mask_from_dict,
    sample_subband_layouts,
    subband_layouts,
    subband_mask,
    validate,
)
from .metrics import (
    NEG_INF,
    CcdfCurve,
    Feasibility,
    MseRequirementTable,
    estimate_ccdf,
    feasibility,
    format_db,
    json_db,
    papr_quantile_db,
)
from .waveform import MODULATIONS, WaveformConfig, canonical_modulation

MASK_FAMILIES = ("centered", "subband", "explicit")
CCDF_GRID_DB = np.round(np.arange(0.0, 14.0 + 1e-9, 0.05), 2)

_INT = {"type": "integer"}
PLAN_SCHEMA = {
    "type": "object",
    "required": ["modulation", "targets_db", "iteration_caps", "mask_family", "symbols", "seed"],
    "additionalProperties": False,
    "properties": {
        "config": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "nominal_transform_size": {**_INT, "minimum": 1},
                "oversampling_factor": {**_INT, "minimum": 1},
                "active_subcarriers": {**_INT, "minimum": 1},
                "prb_size": {**_INT, "minimum": 1},
                "subcarrier_spacing": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "modulation": {"type": "string"},
        "modulations": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "simulate_modulations": {"type": "boolean"},
        "targets_db": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "iteration_caps": {"type": "array", "items": {**_INT, "minimum": 1}, "minItems": 1},
        "mask_family": {"enum": list(MASK_FAMILIES)},
        "family_params": {"type": "object"},
        "symbols": {**_INT, "minimum": 1},
        "seed": {**_INT, "minimum": 0, "maximum": 2 ** 64 - 1},
        "threshold_mode": {"enum": ["fixed", "tracking"]},
        "probability": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "papr_tolerance_db": {"type": "number", "minimum": 0},
        "mse_margin_db": {"type": "number"},
    },
}

FAMILY_SCHEMAS = {
    "centered": {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "clean_prbs": {"type": "array", "items": {**_INT, "minimum": 0}, "minItems": 1},
            "start": {**_INT, "minimum": 0},
            "stop": {**_INT, "minimum": 0},
            "step": {**_INT, "minimum": 1},
            "edge_bias": {"type": "boolean"},
        },
    },
    "subband": {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "band_count": {**_INT, "minimum": 1},
            "band_width_sc": {**_INT, "minimum": 1},
            "clean_count": {**_INT, "minimum": 0},
            "masks": {**_INT, "minimum": 1},
            "full_enumeration": {"type": "boolean"},
            "mask_seed": {**_INT, "minimum": 0},
        },
    },
    "explicit": {
        "type": "object",
        "required": ["masks"],
        "additionalProperties": False,
        "properties": {"masks": {"type": "array", "items": {"type": "object"}, "minItems": 1}},
    },
}


def _path(prefix, error) -> str:
    out = prefix
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out


@dataclass(frozen=True)
class ExperimentPlan:
    config: WaveformConfig
    modulation: str
    targets_db: tuple
    iteration_caps: tuple
    mask_family: str
    family_params: dict
    symbols: int
    seed: int
    threshold_mode: str = "fixed"
    probability: float = 0.01
    modulations: tuple = ()
    simulate_modulations: bool = False
    papr_tolerance_db: float = 0.2
    mse_margin_db: float = 3.0

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentPlan":
        errors = [(_path("", e), e.message) for e in
                  jsonschema.Draft7Validator(PLAN_SCHEMA).iter_errors(data)]
        if errors:
            raise PlanError(sorted(errors))
        family = data["mask_family"]
        params = data.get("family_params", {})
        errors = [(_path("family_params", e), e.message) for e in
                  jsonschema.Draft7Validator(FAMILY_SCHEMAS[family]).iter_errors(params)]
        try:
            config = WaveformConfig(**data.get("config", {}))
        except ConfigurationError as exc:
            errors.append(("config", str(exc)))
            config = None
        mods = []
        for path, name in [("modulation", data["modulation"])] + [
            (f"modulations[{i}]", m) for i, m in enumerate(data.get("modulations", []))
        ]:
            try:
                mods.append(canonical_modulation(name))
            except ConfigurationError as exc:
                errors.append((path, str(exc)))
        p = data.get("probability", 0.01)
        if data["symbols"] * p < 1:
            errors.append(("symbols", f"{data['symbols']} symbols cannot resolve a CCDF level of {p}"))
        if errors:
            raise PlanError(errors)
        plan = cls(
            config=config,
            modulation=mods[0],
            targets_db=tuple(float(t) for t in data["targets_db"]),
            iteration_caps=tuple(sorted({int(c) for c in data["iteration_caps"]})),
            mask_family=family,
            family_params=dict(params),
            symbols=int(data["symbols"]),
            seed=int(data["seed"]),
            threshold_mode=data.get("threshold_mode", "fixed"),
            probability=float(p),
            modulations=tuple(mods[1:]),
            simulate_modulations=bool(data.get("simulate_modulations", False)),
            papr_tolerance_db=float(data.get("papr_tolerance_db", 0.2)),
            mse_margin_db=float(data.get("mse_margin_db", 3.0)),
        )
        plan.masks()  # surface family/config mismatches now, with field paths
        return plan

    def to_dict(self) -> dict:
        data = {
            "config": self.config.to_dict(),
            "modulation": self.modulation,
            "simulate_modulations": self.simulate_modulations,
            "targets_db": list(self.targets_db),
            "iteration_caps": list(self.iteration_caps),
            "mask_family": self.mask_family,
            "family_params": self.family_params,
            "symbols": self.symbols,
            "seed": self.seed,
            "threshold_mode": self.threshold_mode,
            "probability": self.probability,
            "papr_tolerance_db": self.papr_tolerance_db,
            "mse_margin_db": self.mse_margin_db,
        }
        if self.modulations:
            data["modulations"] = list(self.modulations)
        return data

    def replace(self, **changes) -> "ExperimentPlan":
        data = self.to_dict()
        data.update(changes)
        return ExperimentPlan.from_dict(data)

    def clean_prb_grid(self) -> list[int]:
        fp = self.family_params
        if "clean_prbs" in fp:
            return [int(v) for v in fp["clean_prbs"]]
        start = fp.get("start", 0)
        stop = fp.get("stop", self.config.prb_count)
        return list(range(start, stop + 1, fp.get("step", 1)))

    def masks(self) -> list["MaskEntry"]:
        """Mask instances of the plan, in evaluation order."""
        fp = self.family_params
        if self.mask_family == "centered":
            out = []
            for i, c in enumerate(self.clean_prb_grid()):
                try:
                    m = centered_clean_mask(self.config, c, fp.get("edge_bias", False))
                except ConfigurationError as exc:
                    raise PlanError([(f"family_params.clean_prbs[{i}]", str(exc))]) from None
                out.append(MaskEntry(m.label, m, {"clean_prbs": c}, ()))
            return out
        if self.mask_family == "subband":
            bc = fp.get("band_count", 12)
            width = fp.get("band_width_sc", self.config.active_subcarriers // bc)
            k = fp.get("clean_count", 4)
            if bc * width != self.config.active_subcarriers:
                raise PlanError([("family_params.band_width_sc",
                                  f"{bc} x {width} does not cover {self.config.active_subcarriers} SCs")])
            if k > bc:
                raise PlanError([("family_params.clean_count", f"{k} clean bands > {bc} bands")])
            everything = list(subband_layouts(bc, width, k))
            ordinal = {lay.clean_band_indices: i for i, lay in enumerate(everything)}
            if fp.get("full_enumeration", False):
                chosen = everything
            else:
                chosen = sample_subband_layouts(fp.get("masks", 60), fp.get("mask_seed", self.seed), bc, width, k)
            out = []
            for lay in chosen:
                m = subband_mask(self.config, lay)
                bands = sorted(lay.clean_band_indices)
                out.append(MaskEntry(m.label, m, {"clean_bands": bands,
                                                  "clean_prbs": len(m.clean_set) / self.config.prb_size},
                                     (ordinal[lay.clean_band_indices],)))
            return out
        out = []
        for i, doc in enumerate(fp["masks"]):
            try:
                m = mask_from_dict(doc, self.config)
            except ConfigurationError as exc:
                raise PlanError([(f"family_params.masks[{i}]", str(exc))]) from None
            report = validate(m, self.config)
            if not report.valid:
                raise PlanError([(f"family_params.masks[{i}]", str(report))])
            label = m.label or f"explicit-{i}"
            out.append(MaskEntry(label, m, {"clean_prbs": len(m.clean_set) / self.config.prb_size}, ()))
        return out


@dataclass
class MaskEntry:
    label: str
    mask: FrequencyMask
    info: dict
    stream: tuple


@dataclass
class SweepRow:
    mask: str
    clean_prbs: float
    target_db: float
    cap: int
    papr_1pct_db: float
    distorted_mse_db: float
    iterations_mean: float
    converged_fraction: float

    def as_dict(self) -> dict:
        return {
            "mask": self.mask,
            "clean_prbs": self.clean_prbs,
            "target_db": self.target_db,
            "cap": self.cap,
            "papr_1pct_db": json_db(self.papr_1pct_db),
            "distorted_mse_db": json_db(self.distorted_mse_db),
            "iterations_mean": round(self.iterations_mean, 6),
            "converged_fraction": round(self.converged_fraction, 6),
        }


SWEEP_COLUMNS = ["mask", "clean_prbs", "target_db", "cap", "papr_1pct_db", "distorted_mse_db",
                 "iterations_mean", "converged_fraction"]


def _num(v) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


@dataclass
class SweepResult:
    plan: ExperimentPlan
    rows: list[SweepRow]
    method: str = "ICEF"
    samples: dict = field(default_factory=dict, repr=False)  # (mask, target, cap) -> PAPR samples
    stats: dict = field(default_factory=dict, repr=False)  # (mask, target, cap) -> EnsembleStats
    baseline_papr_db: np.ndarray | None = field(default=None, repr=False)

    def row(self, mask: str, target_db: float, cap: int) -> SweepRow:
        for r in self.rows:
            if r.mask == mask and r.target_db == target_db and r.cap == cap:
                return r
        raise KeyError((mask, target_db, cap))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in self.rows:
            w.writerow([r.mask, _num(r.clean_prbs), _num(r.target_db), r.cap, format_db(r.papr_1pct_db),
                        format_db(r.distorted_mse_db), f"{r.iterations_mean:.4f}",
                        f"{r.converged_fraction:.4f}"])
        return buf.getvalue()

    def to_json(self) -> str:
        return dumps({"method": self.method, "rows": [r.as_dict() for r in self.rows]})


def _sweep(plan: ExperimentPlan, masks, method="ICEF", modulation=None, workers=None,
           keep_stats=False) -> SweepResult:
    modulation = modulation or plan.modulation
    rows, samples, stats = [], {}, {}
    for entry in masks:
        ens = simulate(plan.config, entry.mask, modulation, plan.targets_db, plan.iteration_caps,
                       plan.symbols, plan.seed, entry.stream, method, plan.threshold_mode, workers)
        for target in plan.targets_db:
            for cap in plan.iteration_caps:
                cell = ens.cells[(target, cap)]
                rep = cell.mse.report(entry.mask)
                rows.append(SweepRow(entry.label, entry.info["clean_prbs"], target, cap,
                                     papr_quantile_db(cell.papr_db, plan.probability),
                                     rep.distorted_mse_db, float(np.mean(cell.iterations)),
                                     cell.converged_fraction))
                samples[(entry.label, target, cap)] = cell.papr_db
                if keep_stats:
                    stats[(entry.label, target, cap)] = cell
    return SweepResult(plan, rows, method, samples, stats)


def run_kf_sweep(plan: ExperimentPlan, method: str = "ICEF", workers=None, keep_stats=False) -> SweepResult:
    """Clean-PRB sweep over the centered mask family; every mask sees the same data."""
    method = method.upper()
    if plan.mask_family != "centered":
        raise ConfigurationError("run_kf_sweep needs mask_family 'centered'")
    if method not in METHODS:
        raise ConfigurationError(f"method must be one of {METHODS}")
    masks = plan.masks()
    if method == "ICF":
        if any(e.info["clean_prbs"] for e in masks):
            raise ConfigurationError("an ICF sweep only has the |K_F| = 0 point")
        masks = [MaskEntry(e.label, icf_mask(plan.config), e.info, e.stream) for e in masks]
    return _sweep(plan, masks, method, workers=workers, keep_stats=keep_stats)


def sweep_files(result: SweepResult, stem: str = "sweep") -> dict:
    return {f"{stem}.csv": result.to_csv(), f"{stem}.json": result.to_json()}


@dataclass
class CcdfResult:
    curves: dict  # name -> CcdfCurve
    papr_at_p: dict  # name -> dB
    probability: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["curve", "level_db", "ccdf"])
        for name, curve in self.curves.items():
            for g, p in zip(curve.papr_grid_db, curve.probability):
                w.writerow([name, format_db(g), f"{p:.6g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        return dumps({"probability": self.probability,
                      "papr_at_probability_db": {k: json_db(v) for k, v in self.papr_at_p.items()}})


def run_ccdf(plan: ExperimentPlan, baseline_only: bool = False, workers=None) -> CcdfResult:
    """PAPR CCDFs: the unclipped ensemble plus every (mask, target, cap) cell."""
    base = unclipped_papr(plan.config, plan.modulation, plan.symbols, plan.seed)
    curves = {"unclipped": estimate_ccdf(base, CCDF_GRID_DB)}
    at = {"unclipped": papr_quantile_db(base, plan.probability)}
    if not baseline_only:
        sweep = _sweep(plan, plan.masks(), workers=workers)
        for (label, target, cap), s in sweep.samples.items():
            name = f"{label}/target={_num(target)}/L={cap}"
            curves[name] = estimate_ccdf(s, CCDF_GRID_DB)
            at[name] = papr_quantile_db(s, plan.probability)
    return CcdfResult(curves, at, plan.probability)


@dataclass
class FeasibilityCell:
    modulation: str
    target_db: float
    max_clean_prbs: float
    limiting: str
    per_point: list  # (clean_prbs, Feasibility)


@dataclass
class FeasibilityMap:
    cells: list[FeasibilityCell]
    cap: int

    def cell(self, modulation: str, target_db: float) -> FeasibilityCell:
        modulation = canonical_modulation(modulation)
        for c in self.cells:
            if c.modulation == modulation and c.target_db == target_db:
                return c
        raise KeyError((modulation, target_db))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["modulation", "target_db", "max_clean_prbs", "limiting"])
        for c in self.cells:
            w.writerow([c.modulation, _num(c.target_db), _num(c.max_clean_prbs), c.limiting])
        return buf.getvalue()

    def to_json(self) -> str:
        return dumps({"cap": self.cap, "cells": [
            {"modulation": c.modulation, "target_db": c.target_db, "max_clean_prbs": c.max_clean_prbs,
             "limiting": c.limiting, "points": [[k, f.value] for k, f in c.per_point]}
            for c in self.cells]})


def classify_cells(sweep: SweepResult, modulation: str, table: MseRequirementTable, tolerance_db: float,
                   cap: int) -> list[FeasibilityCell]:
    out = []
    for target in sweep.plan.targets_db:
        rows = sorted((r for r in sweep.rows if r.target_db == target and r.cap == cap),
                      key=lambda r: r.clean_prbs)
        points = [(r.clean_prbs, feasibility(r.papr_1pct_db, target, tolerance_db, r.distorted_mse_db,
                                             modulation, table)) for r in rows]
        ok = [i for i, (_, f) in enumerate(points) if f is Feasibility.FEASIBLE]
        if not ok:
            best, limiting = 0, points[0][1].value
        else:
            i = ok[-1]
            best = points[i][0]
            limiting = points[i + 1][1].value if i + 1 < len(points) else "grid"
        out.append(FeasibilityCell(modulation, target, best, limiting, points))
    return out


def run_feasibility_map(plan: ExperimentPlan, table: MseRequirementTable | None = None,
                        sweep: SweepResult | None = None, workers=None) -> FeasibilityMap:
    """Largest feasible clean-PRB count per (modulation, target) at the largest iteration cap.

    Unless ``simulate_modulations`` is set, one sweep with the plan's data
    modulation is scored against every modulation's MSE requirement.
    """
    table = table or MseRequirementTable(margin_db=plan.mse_margin_db)
    modulations = list(plan.modulations) or list(table.required_db)
    cap = max(plan.iteration_caps)
    cells = []
    for mod in modulations:
        if plan.simulate_modulations:
            s = _sweep(plan, plan.masks(), modulation=mod, workers=workers)
        else:
            s = sweep or run_kf_sweep(plan, workers=workers)
            sweep = s
        cells.extend(classify_cells(s, canonical_modulation(mod), table, plan.papr_tolerance_db, cap))
    return FeasibilityMap(cells, cap)


@dataclass
class MaskStudyResult:
    rows: list[SweepRow]
    bands: dict  # mask label -> clean band list
    summary: list[dict]
    spectra: dict  # target -> {"best": (label, dB array), "worst": (label, dB array)}
    transform_size: int

    def spread(self, target_db: float, cap: int) -> dict:
        for s in self.summary:
            if s["target_db"] == target_db and s["cap"] == cap:
                return s
        raise KeyError((target_db, cap))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["mask", "clean_bands", "target_db", "cap", "papr_1pct_db", "distorted_mse_db"])
        for r in self.rows:
            w.writerow([r.mask, " ".join(map(str, self.bands[r.mask])), _num(r.target_db), r.cap,
                        format_db(r.papr_1pct_db), format_db(r.distorted_mse_db)])
        return buf.getvalue()

    def summary_csv(self) -> str:
        cols = ["target_db", "cap", "masks", "papr_min_db", "papr_max_db", "papr_mean_db", "papr_spread_db",
                "mse_min_db", "mse_max_db", "mse_mean_db", "mse_spread_db", "best_mask", "worst_mask"]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for s in self.summary:
            w.writerow([_num(s["target_db"]), s["cap"], s["masks"]]
                       + [format_db(s[c]) for c in cols[3:11]] + [s["best_mask"], s["worst_mask"]])
        return buf.getvalue()

    def spectra_csv(self) -> str:
        n = self.transform_size
        idx = np.arange(-(n // 2), n // 2)
        targets = sorted(self.spectra)
        header = ["subcarrier"]
        cols = []
        for t in targets:
            for which in ("best", "worst"):
                label, spec = self.spectra[t][which]
                header.append(f"{which}@{_num(t)}:{label}")
                cols.append(spec[idx % n])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for j, k in enumerate(idx):
            w.writerow([int(k)] + [format_db(c[j]) for c in cols])
        return buf.getvalue()

    def to_json(self) -> str:
        def clean(s):
            return {k: (json_db(v) if isinstance(v, float) else v) for k, v in s.items()}
        return dumps({"summary": [clean(s) for s in self.summary],
                      "rows": [dict(r.as_dict(), clean_bands=self.bands[r.mask]) for r in self.rows]})


def run_mask_placement_study(plan: ExperimentPlan, full_enumeration: bool | None = None,
                             workers=None) -> MaskStudyResult:
    """Evaluate sub-band masks; each mask gets its own fresh data stream."""
    if plan.mask_family != "subband":
        raise ConfigurationError("the mask-placement study needs mask_family 'subband'")
    if full_enumeration is not None:
        plan = plan.replace(family_params=dict(plan.family_params, full_enumeration=full_enumeration))
    entries = plan.masks()
    cap_max = max(plan.iteration_caps)
    rows, bands, spectra = [], {}, {}
    for entry in entries:
        bands[entry.label] = entry.info["clean_bands"]
        res = _sweep(plan, [entry], workers=workers, keep_stats=True)
        rows.extend(res.rows)
        for t in plan.targets_db:
            row = res.row(entry.label, t, cap_max)
            cur = spectra.setdefault(t, {})
            spec = None
            if "best" not in cur or row.papr_1pct_db < cur["best"][2]:
                spec = res.stats[(entry.label, t, cap_max)].mse.noise_spectrum_db()
                cur["best"] = (entry.label, spec, row.papr_1pct_db)
            if "worst" not in cur or row.papr_1pct_db > cur["worst"][2]:
                if spec is None:
                    spec = res.stats[(entry.label, t, cap_max)].mse.noise_spectrum_db()
                cur["worst"] = (entry.label, spec, row.papr_1pct_db)
    summary = []
    for t in plan.targets_db:
        for cap in plan.iteration_caps:
            sel = [r for r in rows if r.target_db == t and r.cap == cap]
            p = np.array([r.papr_1pct_db for r in sel])
            m = np.array([r.distorted_mse_db for r in sel])
            summary.append({
                "target_db": t, "cap": cap, "masks": len(sel),
                "papr_min_db": float(p.min()), "papr_max_db": float(p.max()), "papr_mean_db": float(p.mean()),
                "papr_spread_db": float(p.max() - p.min()),
                "mse_min_db": float(m.min()), "mse_max_db": float(m.max()), "mse_mean_db": float(m.mean()),
                "mse_spread_db": float(m.max() - m.min()) if np.all(np.isfinite(m)) else math.inf,
                "best_mask": sel[int(np.argmin(p))].mask, "worst_mask": sel[int(np.argmax(p))].mask,
            })
    spectra = {t: {k: v[:2] for k, v in d.items()} for t, d in spectra.items()}
    return MaskStudyResult(rows, bands, summary, spectra, plan.config.transform_size)


DEFAULT_PLANS = {
    "ccdf": {
        "modulation": "QPSK", "targets_db": [6, 8], "iteration_caps": [1, 10, 20],
        "mask_family": "centered", "family_params": {"clean_prbs": [34]}, "symbols": 10000, "seed": 1,
    },
    "sweep": {
        "modulation": "QPSK", "targets_db": [6, 8], "iteration_caps": [1, 10, 20],
        "mask_family": "centered", "family_params": {"start": 0, "stop": 88, "step": 4},
        "symbols": 2000, "seed": 1,
    },
    "feasibility": {
        "modulation": "QPSK", "targets_db": [6, 7, 8], "iteration_caps": [20],
        "mask_family": "centered", "family_params": {"start": 0, "stop": 88, "step": 2},
        "symbols": 2000, "seed": 1,
    },
    "mask-study": {
        "modulation": "QPSK", "targets_db": [7], "iteration_caps": [20],
        "mask_family": "subband",
        "family_params": {"band_count": 12, "band_width_sc": 106, "clean_count": 4, "masks": 60},
        "symbols": 2000, "seed": 1,
    },
}


def manifest(plan: ExperimentPlan, command: str) -> dict:
    data = plan.to_dict()
    return {"command": command, "seed": plan.seed, "plan_hash": plan_hash(data), "version": __version__,
            "plan": data, "neg_inf_sentinel": NEG_INF}


__all__ = [
    "ExperimentPlan", "SweepResult", "SweepRow", "CcdfResult", "FeasibilityMap", "MaskStudyResult",
    "run_kf_sweep", "run_ccdf", "run_feasibility_map", "run_mask_placement_study", "manifest",
    "MODULATIONS", "SubBandLayout", "CcdfCurve",
]
