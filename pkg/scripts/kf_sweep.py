"""Clean-PRB sweep: 1% PAPR and distorted-SC MSE versus |K_F| for each target and iteration cap.

    python scripts/kf_sweep.py --out results/kf_sweep [--symbols 500]
"""

import argparse
import json
from pathlib import Path

from icef.experiments import ExperimentPlan, manifest, run_kf_sweep, sweep_files
from icef.io import write_outputs

HERE = Path(__file__).parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plan", default=HERE / "plans" / "kf_sweep.json")
    ap.add_argument("--out", default="results/kf_sweep")
    ap.add_argument("--symbols", type=int)
    args = ap.parse_args()
    data = json.loads(Path(args.plan).read_text())
    if args.symbols:
        data["symbols"] = args.symbols
    plan = ExperimentPlan.from_dict(data)
    result = run_kf_sweep(plan)
    write_outputs(args.out, sweep_files(result), manifest(plan, "kf_sweep"))
    print(f"{'|K_F|':>6} {'target':>6} {'L':>3} {'PAPR@1%':>8} {'MSE dB':>8} {'iters':>6}")
    for r in result.rows:
        print(f"{r.clean_prbs:>6g} {r.target_db:>6g} {r.cap:>3d} {r.papr_1pct_db:8.3f} "
              f"{r.distorted_mse_db:8.2f} {r.iterations_mean:6.2f}")


if __name__ == "__main__":
    main()
