"""PAPR CCDF curves: unclipped ensemble plus every (mask, target, cap) cell of the plan.

    python scripts/ccdf_curves.py --out results/ccdf [--baseline-only]
"""

import argparse
import json
from pathlib import Path

from icef.experiments import ExperimentPlan, manifest, run_ccdf
from icef.io import write_outputs
from icef.metrics import analytic_papr_at_probability

HERE = Path(__file__).parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plan", default=HERE / "plans" / "ccdf_34prb.json")
    ap.add_argument("--out", default="results/ccdf")
    ap.add_argument("--symbols", type=int)
    ap.add_argument("--baseline-only", action="store_true")
    args = ap.parse_args()
    data = json.loads(Path(args.plan).read_text())
    if args.symbols:
        data["symbols"] = args.symbols
    plan = ExperimentPlan.from_dict(data)
    res = run_ccdf(plan, baseline_only=args.baseline_only)
    write_outputs(args.out, {"ccdf.csv": res.to_csv(), "ccdf.json": res.to_json()}, manifest(plan, "ccdf"))
    ref = analytic_papr_at_probability(plan.probability, plan.config.active_subcarriers)
    print(f"closed-form (Nyquist-rate) reference: {ref:.3f} dB")
    for name, v in res.papr_at_p.items():
        print(f"{name:>32}: {v:.3f} dB")


if __name__ == "__main__":
    main()
