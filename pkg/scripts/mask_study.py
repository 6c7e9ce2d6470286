"""Sub-band mask placement: 1% PAPR and MSE across 4-clean-of-12 sub-band masks.

    python scripts/mask_study.py --out results/mask_study [--full-enumeration]
"""

import argparse
import json
from pathlib import Path

from icef.experiments import ExperimentPlan, manifest, run_mask_placement_study
from icef.io import write_outputs

HERE = Path(__file__).parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plan", default=HERE / "plans" / "mask_study.json")
    ap.add_argument("--out", default="results/mask_study")
    ap.add_argument("--symbols", type=int)
    ap.add_argument("--full-enumeration", action="store_true")
    args = ap.parse_args()
    data = json.loads(Path(args.plan).read_text())
    if args.symbols:
        data["symbols"] = args.symbols
    plan = ExperimentPlan.from_dict(data)
    res = run_mask_placement_study(plan, full_enumeration=True if args.full_enumeration else None)
    files = {"mask_study.csv": res.to_csv(), "mask_study_summary.csv": res.summary_csv(),
             "mask_study.json": res.to_json(), "noise_spectra.csv": res.spectra_csv()}
    write_outputs(args.out, files, manifest(plan, "mask_study"))
    for s in res.summary:
        print(f"target {s['target_db']:g} dB, L={s['cap']}: {s['masks']} masks")
        print(f"  1% PAPR  min {s['papr_min_db']:.3f}  max {s['papr_max_db']:.3f}  spread {s['papr_spread_db']:.3f} dB")
        print(f"  MSE      min {s['mse_min_db']:.2f}  max {s['mse_max_db']:.2f}  spread {s['mse_spread_db']:.3f} dB")
        print(f"  best {s['best_mask']}, worst {s['worst_mask']}")


if __name__ == "__main__":
    main()
