"""Command-line front end: ``python -m icef <subcommand>`` or ``icef <subcommand>``.

Exit status: 0 on success, 1 when a run or validation fails, 2 for unreadable
input (bad IQ file, malformed JSON, plan schema violations).
"""

from __future__ import annotations

import argparse
import copy
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .engine import complexity, overhead, run, transform_cost
from .errors import ConfigurationError, IcefError, InvalidSignalError, ParseError, PlanError
from .experiments import (
    DEFAULT_PLANS,
    ExperimentPlan,
    manifest,
    run_ccdf,
    run_feasibility_map,
    run_kf_sweep,
    run_mask_placement_study,
    sweep_files,
)
from .io import dumps, read_iq, write_iq, write_outputs
from .masks import icf_mask, mask_from_dict, validate
from .metrics import json_db
from .waveform import ClipperConfig, OfdmSymbol, WaveformConfig

log = logging.getLogger("icef")

EXIT_OK, EXIT_FAILED, EXIT_PARSE = 0, 1, 2


def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", offset=exc.pos) from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _coerce(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(data: dict, overrides) -> dict:
    """Apply ``key.sub=value`` overrides; values are parsed as JSON when possible."""
    data = copy.deepcopy(data)
    for item in overrides or ():
        if "=" not in item:
            raise PlanError([(item, "override must look like key=value")])
        key, value = item.split("=", 1)
        node = data
        parts = key.split(".")
        for p in parts[:-1]:
            node = node.setdefault(p, {})
            if not isinstance(node, dict):
                raise PlanError([(key, f"{p} is not an object")])
        node[parts[-1]] = _coerce(value)
    return data


def _plan(args, kind: str) -> ExperimentPlan:
    data = _load_json(args.config) if args.config else copy.deepcopy(DEFAULT_PLANS[kind])
    data = apply_overrides(data, args.override)
    if args.seed is not None:
        data["seed"] = args.seed
    if args.symbols is not None:
        data["symbols"] = args.symbols
    return ExperimentPlan.from_dict(data)


def _waveform_config(args) -> WaveformConfig:
    data = apply_overrides(_load_json(args.config) if args.config else {}, args.override)
    cfg = data.get("config", data)
    try:
        return WaveformConfig(**cfg)
    except TypeError as exc:
        raise PlanError([("config", str(exc))]) from None


def _finish(args, plan, files, command):
    out = Path(args.out)
    write_outputs(out, files, manifest(plan, command))
    print(f"wrote {', '.join(sorted(files))} and manifest.json to {out}")


def cmd_sweep(args) -> int:
    plan = _plan(args, "sweep")
    result = run_kf_sweep(plan)
    _finish(args, plan, sweep_files(result), "sweep")
    for r in result.rows:
        print(f"{r.mask:>14}  target {r.target_db:4.1f} dB  L={r.cap:<3d} "
              f"PAPR@{plan.probability:g} {r.papr_1pct_db:6.3f} dB  MSE {r.distorted_mse_db:8.3f} dB")
    return EXIT_OK


def cmd_ccdf(args) -> int:
    plan = _plan(args, "ccdf")
    result = run_ccdf(plan, baseline_only=args.baseline_only)
    _finish(args, plan, {"ccdf.csv": result.to_csv(), "ccdf.json": result.to_json()}, "ccdf")
    for name, v in result.papr_at_p.items():
        print(f"{name}: PAPR at CCDF {plan.probability:g} = {v:.3f} dB")
    return EXIT_OK


def cmd_feasibility(args) -> int:
    plan = _plan(args, "feasibility")
    sweep = run_kf_sweep(plan)
    fmap = run_feasibility_map(plan, sweep=sweep)
    files = {"feasibility.csv": fmap.to_csv(), "feasibility.json": fmap.to_json(), **sweep_files(sweep)}
    _finish(args, plan, files, "feasibility")
    for c in fmap.cells:
        print(f"{c.modulation:>7} target {c.target_db:4.1f} dB: max |K_F| = {c.max_clean_prbs:g} PRBs ({c.limiting})")
    return EXIT_OK


def cmd_mask_study(args) -> int:
    plan = _plan(args, "mask-study")
    result = run_mask_placement_study(plan, full_enumeration=True if args.full_enumeration else None)
    files = {"mask_study.csv": result.to_csv(), "mask_study_summary.csv": result.summary_csv(),
             "mask_study.json": result.to_json(), "noise_spectra.csv": result.spectra_csv()}
    _finish(args, plan, files, "mask-study")
    for s in result.summary:
        print(f"target {s['target_db']:g} dB L={s['cap']}: {s['masks']} masks, PAPR spread "
              f"{s['papr_spread_db']:.3f} dB, MSE spread {s['mse_spread_db']:.3f} dB")
    return EXIT_OK


def cmd_complexity(args) -> int:
    config = _waveform_config(args)
    n = config.transform_size
    mults, adds = transform_cost(n)
    rows = [complexity(config, m) for m in ("ICF", "ICEF-binary", "ICEF-weighted")]
    om, oa = overhead(config)
    print(f"N = {n} (M = {config.log2_size}): one transform = {mults} real mults, {adds} real adds")
    for r in rows:
        print(f"{r.method:>14}: {r.real_mults_per_iter} mults, {r.real_adds_per_iter} adds per iteration")
    print(f"ICEF-weighted overhead vs ICF: {100 * om:.2f}% mults, {100 * oa:.2f}% adds")
    if args.out:
        doc = {"transform_size": n, "transform_mults": mults, "transform_adds": adds,
               "methods": [r.__dict__ for r in rows],
               "weighted_overhead": {"mults": round(om, 6), "adds": round(oa, 6)}}
        write_outputs(args.out, {"complexity.json": dumps(doc)},
                      {"command": "complexity", "version": __version__, "config": config.to_dict()})
    return EXIT_OK


def _load_mask(path, config):
    mask = mask_from_dict(_load_json(path), config)
    report = validate(mask, config)
    return mask, report


def cmd_validate_mask(args) -> int:
    config = _waveform_config(args)
    try:
        _, report = _load_mask(args.mask, config)
    except ConfigurationError as exc:
        print(f"invalid: {exc}")
        return EXIT_FAILED
    print(report)
    return EXIT_OK if report.valid else EXIT_FAILED


def cmd_reduce(args) -> int:
    config = _waveform_config(args)
    samples, meta = read_iq(args.input)
    n = config.transform_size
    if meta.get("N", n) != n:
        raise InvalidSignalError(f"sidecar says N={meta['N']} but the config has N={n}")
    if samples.size % n:
        raise InvalidSignalError(f"{samples.size} samples is not a multiple of N={n}")
    if args.mask:
        mask, report = _load_mask(args.mask, config)
        if not report.valid:
            raise InvalidSignalError(f"mask does not fit the config: {report}")
    else:
        mask = icf_mask(config)
    out = np.empty_like(samples)
    trace = []
    for i, x in enumerate(samples.reshape(-1, n)):
        symbol = OfdmSymbol.from_time(config, x)
        clipper = ClipperConfig.for_symbol(symbol, args.target, args.iterations, args.threshold_mode)
        res = run(symbol, clipper, mask, args.method)
        out[i * n:(i + 1) * n] = res.symbol.current_time
        trace.append({"symbol": i, "iterations": res.iterations_used, "converged": res.converged,
                      "papr_before_db": json_db(res.initial_papr_db),
                      "papr_after_db": json_db(res.final_papr_db)})
    dest = Path(args.out)
    side = dict(meta, N=n, symbol_count=len(trace))
    write_iq(dest / "reduced.iq", out, side)
    write_outputs(dest, {"trace.json": dumps({"method": args.method, "target_db": args.target,
                                              "max_iterations": args.iterations, "symbols": trace})},
                  {"command": "reduce", "version": __version__, "input": str(args.input),
                   "mask": str(args.mask) if args.mask else "icf", "config": config.to_dict()})
    print(f"reduced {len(trace)} symbol(s); output in {dest}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="icef", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="plan JSON (or waveform config JSON for reduce/complexity)")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--symbols", type=int)
    common.add_argument("--override", action="append", metavar="KEY=VALUE", default=[])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="ICEF/ICF on a raw IQ file")
    p.add_argument("input")
    p.add_argument("--mask", help="mask JSON (default: ICF mask)")
    p.add_argument("--target", type=float, required=True, help="PAPR target in dB")
    p.add_argument("--iterations", type=int, default=20)
    p.add_argument("--method", choices=["ICEF", "ICF"], default="ICEF")
    p.add_argument("--threshold-mode", choices=["fixed", "tracking"], default="fixed")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("ccdf", parents=[common], help="PAPR CCDF curves")
    p.add_argument("--baseline-only", action="store_true", help="only the unclipped ensemble")
    p.set_defaults(func=cmd_ccdf)
    sub.add_parser("sweep", parents=[common], help="clean-PRB sweep").set_defaults(func=cmd_sweep)
    sub.add_parser("feasibility", parents=[common],
                   help="max clean PRBs per modulation and target").set_defaults(func=cmd_feasibility)
    p = sub.add_parser("mask-study", parents=[common], help="sub-band mask placement study")
    p.add_argument("--full-enumeration", action="store_true", help="evaluate every sub-band mask")
    p.set_defaults(func=cmd_mask_study)
    sub.add_parser("complexity", parents=[common],
                   help="operation counts per iteration").set_defaults(func=cmd_complexity, out=None)
    p = sub.add_parser("validate-mask", parents=[common], help="check a mask file against a config")
    p.add_argument("mask")
    p.set_defaults(func=cmd_validate_mask)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, PlanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IcefError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
